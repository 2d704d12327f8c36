//! Which labelled triangles and polygons occur inside Conway–Coxeter
//! friezes.
use grassfrieze::frieze::{subpolygon_admissible, triangle_admissible, triangle_sweep};
use grassfrieze::pluecker::pluecker_of_matrix;
use grassfrieze::{int, Matrix, Specialization};

fn main() -> grassfrieze::Result<()> {
    for (a, b, c) in [(1, 1, 2), (2, 3, 5), (2, 2, 2), (3, 3, 3), (4, 5, 6)] {
        let ok = triangle_admissible(&int(a), &int(b), &int(c))?;
        println!("triangle ({a}, {b}, {c}): {}", if ok { "occurs" } else { "never occurs" });
    }

    let twos = Specialization::constant(2, 3, int(2))?;
    println!("{{2,2,2}}: {}", serde_json::to_string(&subpolygon_admissible(&twos)?)?);
    let quad = pluecker_of_matrix(&Matrix::from_i64(&[[1, 1, 1, 0], [0, 1, 3, 1]]))?;
    println!("quadrilateral: {}", serde_json::to_string(&subpolygon_admissible(&quad)?)?);

    let sweep = triangle_sweep(8, 8)?;
    println!(
        "n <= 8, labels <= 8: {} realized, {} accepted, first unrealized {:?}",
        sweep.realized.len(),
        sweep.accepted.len(),
        sweep.unrealized().first()
    );
    Ok(())
}
