use crate::Scalar;

/// Entrywise division with the zero-denominator convention `z_i = x_i` when `y_i = 0`.
pub fn entrywise_div<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    assert_eq!(x.len(), y.len(), "entrywise_div length mismatch");
    x.iter()
        .zip(y)
        .map(|(&a, &b)| if b == T::zero() { a } else { a / b })
        .collect()
}

/// Componentwise distance `‖(x − y)/y‖_∞`, falling back to absolute error where `y_i = 0`.
pub fn comp_distance<T: Scalar>(x: &[T], y: &[T]) -> T {
    assert_eq!(x.len(), y.len(), "comp_distance length mismatch");
    let diff: Vec<T> = x.iter().zip(y).map(|(&a, &b)| a - b).collect();
    inf_norm(&entrywise_div(&diff, y))
}

pub fn inf_norm<T: Scalar>(x: &[T]) -> T {
    x.iter()
        .fold(T::zero(), |acc, &v| if v.abs() > acc { v.abs() } else { acc })
}

pub fn two_norm<T: Scalar>(x: &[T]) -> T {
    x.iter().map(|&v| v * v).sum::<T>().sqrt()
}

pub fn abs_vec<T: Scalar>(x: &[T]) -> Vec<T> {
    x.iter().map(|v| v.abs()).collect()
}
