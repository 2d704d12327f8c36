//! Unit cluster specializations and the hyperplane arrangements they
//! produce.
use grassfrieze::arrangements::{check_non_crossing, compare_positive_roots, line_set, RootSystem};
use grassfrieze::Matrix;

fn main() -> grassfrieze::Result<()> {
    let a3 = Matrix::from_i64(&[[1, 1, 1, 0, 0, 0], [0, 1, 1, 1, 1, 0], [0, 0, 1, 0, 1, 1]]);
    println!("{a3}lines: {}", line_set(&a3)?.len());
    println!("positive roots of A3: {}", compare_positive_roots(&a3, RootSystem::A3)?);
    println!("positive roots of B3: {}", compare_positive_roots(&a3, RootSystem::B3)?);

    let cluster = vec![vec![1, 3], vec![1, 4], vec![1, 5]];
    println!("fan {:?}: {:?}", cluster, check_non_crossing(&cluster));
    let crossing = vec![vec![1, 3], vec![2, 4]];
    println!("{:?}: {:?}", crossing, check_non_crossing(&crossing));
    Ok(())
}
