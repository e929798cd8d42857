// Kronecker powers of the order-4 Hadamard matrix, their graphs, and
// order-256 matrices with every even 2-rank from 8 to 20.
// $ cargo run --release --example hadamard_tower
use srgrank::hadamard::{graph_of, h_of_graph, h_power, substituted_power, HMatrix};
use srgrank::iso::are_isomorphic;
use srgrank::switching::replay_published_chain;
use srgrank::{srg_params, symplectic_graph};

fn main() -> srgrank::Result<()> {
    for nu in 1..=4 {
        let h = h_power(nu)?;
        println!("H^{nu}: order {} rho {}", h.order(), h.rho());
    }
    let g = graph_of(&h_power(3)?)?;
    println!("graph of H^3 ~ Sp(6,2): {}", are_isomorphic(&g, &symplectic_graph(3)?)?);

    for g in replay_published_chain()?.graphs()? {
        let h = substituted_power(&[h_of_graph(&g)?, HMatrix::h4()])?;
        let big = graph_of(&h)?;
        println!("block rank {:>2} -> {} rank2 {}", g.rank2(), srg_params(&big)?, big.rank2());
    }
    Ok(())
}
