//! Exact integer toolkit: Bezout, CRT, Hermite normal form, volumes.
use grassfrieze::exactlin::{column_hnf, crt, det, factorize, volume, xgcd, Matrix};
use grassfrieze::int;

fn main() -> grassfrieze::Result<()> {
    let (g, s, t) = xgcd(&int(240), &int(46));
    println!("gcd(240, 46) = {g} = {s}*240 + {t}*46");

    let x = crt(&[(int(2), int(3)), (int(3), int(5)), (int(2), int(7))])?;
    println!("x = 2 mod 3, 3 mod 5, 2 mod 7  =>  x = {x}");
    println!("factorize(360) = {:?}", factorize(&int(360))?);

    let a = Matrix::from_i64(&[[4, 7, 2], [1, -3, 5], [6, 0, 8]]);
    let r = column_hnf(&a)?;
    println!("A =\n{a}\nH = A U =\n{}\nU =\n{}", r.h, r.u);
    println!("det A = {}, volume of the first two columns = {}", det(&a)?, volume(&a.select_columns(&[0, 1]))?);
    Ok(())
}
