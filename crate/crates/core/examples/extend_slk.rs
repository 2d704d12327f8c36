//! Extend a positive configuration to an SL_k frieze by inserting columns.
use grassfrieze::frieze::{extend_to_slk, FriezeSequence};
use grassfrieze::Matrix;

fn main() -> grassfrieze::Result<()> {
    for x in [
        Matrix::from_i64(&[[1, 1, -1], [0, 3, 2]]),
        Matrix::from_i64(&[[0, 0, 1], [1, -1, -1], [4, -2, 2]]),
    ] {
        let seq = FriezeSequence::from_matrix(&x);
        println!("start\n{x}frozen values {:?}", seq.frozen_values().iter().map(|v| v.to_string()).collect::<Vec<_>>());
        let trace = extend_to_slk(&x)?;
        for s in &trace.steps {
            println!(
                "  insert {:?} at {} (window {}, {:?}/{:?}): D {} -> {}",
                s.vector.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                s.position, s.window, s.case, s.method, s.d_before, s.d_after
            );
        }
        println!("SL_{} frieze\n{}original columns at {:?}\n", x.rows(), trace.final_sequence.to_matrix(), trace.embedding);
    }
    Ok(())
}
