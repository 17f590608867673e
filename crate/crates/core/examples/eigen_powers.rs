//! Eigendecomposition and fractional powers of a Hermitian positive definite
//! matrix.

use tfp::hpd::{eig_hermitian, matrix_power, CMatrix, Complex64, Hermitian, PdMatrix};

pub fn run_example() {
    let c = |re, im| Complex64::new(re, im);
    let h = Hermitian::new(
        CMatrix::from_rows(vec![
            vec![c(4.0, 0.0), c(1.0, 1.0), c(0.0, 0.0)],
            vec![c(1.0, -1.0), c(3.0, 0.0), c(0.5, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0), c(2.0, 0.0)],
        ])
        .unwrap(),
    )
    .unwrap();

    let eig = eig_hermitian(&h).unwrap();
    println!("eigenvalues: {:?}", eig.values);
    let err = eig.reconstruct().matrix().max_abs_diff(h.matrix()).unwrap();
    println!("reconstruction error: {err:.2e}");
    assert!(err < 1e-12);

    let x = PdMatrix::new(h).unwrap();
    let half = matrix_power(&x, 0.5).unwrap();
    let square = half.matrix().matmul(half.matrix()).unwrap();
    let err = square.max_abs_diff(x.matrix()).unwrap();
    println!("X^(1/2) X^(1/2) - X: {err:.2e}");
    assert!(err < 1e-12);

    let inv = matrix_power(&x, -1.0).unwrap();
    let err = inv
        .matrix()
        .matmul(x.matrix())
        .unwrap()
        .max_abs_diff(&CMatrix::identity(3))
        .unwrap();
    println!("X^-1 X - I: {err:.2e}");
    assert!(err < 1e-12);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
