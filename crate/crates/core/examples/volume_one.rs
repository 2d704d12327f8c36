//! Decide and construct representations whose columns are primitive.
use grassfrieze::pluecker::pluecker_of_matrix;
use grassfrieze::volume_one::{check_n_bound, construct_volume_one, decide_volume_one};
use grassfrieze::{int, Specialization};

fn main() -> grassfrieze::Result<()> {
    for value in [3, 2] {
        let s = Specialization::constant(2, 3, int(value))?;
        let verdict = decide_volume_one(&s)?;
        println!("all minors {value}: {}", serde_json::to_string(&verdict)?);
        if verdict.exists {
            let x = construct_volume_one(&s)?;
            println!("primitive columns:\n{x}");
            assert_eq!(pluecker_of_matrix(&x)?, s);
        }
    }

    // with every value of 2-valuation 1 there are at most three columns
    let pentagon = Specialization::constant(2, 5, int(2))?;
    println!("column bound, five columns, q = 2: {}", serde_json::to_string(&check_n_bound(&pentagon, &int(2))?)?);
    Ok(())
}
