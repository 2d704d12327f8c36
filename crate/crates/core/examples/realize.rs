//! Realize prescribed maximal minors by an integer matrix and check the
//! exchange relations.
use grassfrieze::pluecker::{first_violation, pluecker_of_matrix};
use grassfrieze::realize::realize;
use grassfrieze::{int, Matrix, Specialization};

fn main() -> grassfrieze::Result<()> {
    let x = Matrix::from_i64(&[[1, 2, 0, -1, 3], [0, 1, 1, 2, 1], [2, 0, 1, 1, -1]]);
    let s = pluecker_of_matrix(&x)?;
    println!("minors of a 3x5 matrix:");
    for (subset, v) in s.iter() {
        println!("  p{subset:?} = {v}");
    }
    let y = realize(&s)?;
    println!("realized by\n{y}");
    assert_eq!(pluecker_of_matrix(&y)?, s);

    // all ones on a square violates 1*1 = 1*1 + 1*1
    let square = Specialization::constant(2, 4, int(1))?;
    match first_violation(&square) {
        Some(v) => println!("all-ones square is inconsistent: {v}"),
        None => unreachable!(),
    }
    println!("realize(all-ones square) -> {}", realize(&square).unwrap_err());
    Ok(())
}
