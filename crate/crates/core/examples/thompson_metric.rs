//! Thompson distances between positive definite matrices and the three
//! inequalities the solver's contraction estimates are built from.

use tfp::hpd::{
    congruence, matrix_power, random_nonsingular_with, random_pd_in_ball, seeded_rng, PdMatrix,
};
use tfp::thompson::distance;

pub fn run_example() {
    // diagonal matrices: max |log(a_i / b_i)|
    let a = PdMatrix::from_diag(&[1.0, 4.0]).unwrap();
    let b = PdMatrix::from_diag(&[2.0, 1.0]).unwrap();
    let d = distance(&a, &b).unwrap();
    println!("d(diag(1,4), diag(2,1)) = {d:.6} (ln 4 = {:.6})", 4f64.ln());
    assert!((d - 4f64.ln()).abs() < 1e-12);

    let x = random_pd_in_ball(3, 1.5, 1);
    let y = random_pd_in_ball(3, 1.5, 2);
    let dxy = distance(&x, &y).unwrap();

    let inv = distance(
        &matrix_power(&x, -1.0).unwrap(),
        &matrix_power(&y, -1.0).unwrap(),
    )
    .unwrap();
    let m = random_nonsingular_with(&mut seeded_rng(3), 3, 1.0);
    let cx = PdMatrix::new(congruence(&m, x.hermitian()).unwrap()).unwrap();
    let cy = PdMatrix::new(congruence(&m, y.hermitian()).unwrap()).unwrap();
    let cong = distance(&cx, &cy).unwrap();
    println!("d(X,Y) = {dxy:.9}, d(X^-1,Y^-1) = {inv:.9}, d(M*XM, M*YM) = {cong:.9}");

    for r in [0.25, 0.5, -0.75] {
        let dr = distance(&matrix_power(&x, r).unwrap(), &matrix_power(&y, r).unwrap()).unwrap();
        println!(
            "r = {r:5}: d(X^r, Y^r) = {dr:.6} <= |r| d(X,Y) = {:.6}",
            r.abs() * dxy
        );
        assert!(dr <= r.abs() * dxy + 1e-9);
    }

    let u = random_pd_in_ball(3, 1.5, 4);
    let v = random_pd_in_ball(3, 1.5, 5);
    let sum = distance(&x.add(&u).unwrap(), &y.add(&v).unwrap()).unwrap();
    let cap = dxy.max(distance(&u, &v).unwrap());
    println!("d(X+U, Y+V) = {sum:.6} <= max(d(X,Y), d(U,V)) = {cap:.6}");
    assert!(sum <= cap + 1e-9);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
