//! Conway–Coxeter friezes from triangulations, and restriction to a
//! sub-polygon (a frieze with coefficients).
use grassfrieze::frieze::{cc_frieze, enumerate_triangulations, frieze_table, frozen_value, restrict, Triangulation};

fn print(table: &[Vec<grassfrieze::Int>]) {
    for row in table {
        println!("{}", row.iter().map(|v| format!("{v:>4}")).collect::<String>());
    }
}

fn main() -> grassfrieze::Result<()> {
    let t = Triangulation::parse(6, "1-3,1-4,4-6")?;
    let s = cc_frieze(&t)?;
    println!("frieze of the hexagon triangulated by {t}:");
    print(&frieze_table(&s));

    let sub = restrict(&s, &[1, 2, 4, 5])?;
    let edges: Vec<String> = (1..=4).map(|i| frozen_value(&sub, i).to_string()).collect();
    println!("restricted to vertices 1,2,4,5 (edge values {}):", edges.join(","));
    print(&frieze_table(&sub));

    for n in 3..=8 {
        println!("n = {n}: {} triangulations", enumerate_triangulations(n)?.len());
    }
    Ok(())
}
