// Sp(2nu,2) for small nu: parameters, 2-rank and the rank bound.
// $ cargo run --example symplectic
use srgrank::graph::{rank_upper_bound, row_closure_holds, symplectic_form};
use srgrank::{srg_params, symplectic_graph};

fn main() -> srgrank::Result<()> {
    // x = 101000, y = 010000 in coordinates x1..x6
    println!("B(101000, 010000) = {}", symplectic_form(0b000101, 0b000010, 3)?);
    for nu in 2..=4 {
        let g = symplectic_graph(nu)?;
        println!(
            "Sp({},2): {} rank2={} bound={} rows closed under addition: {}",
            2 * nu,
            srg_params(&g)?,
            g.rank2(),
            rank_upper_bound(nu)?,
            row_closure_holds(&g)
        );
    }
    Ok(())
}
