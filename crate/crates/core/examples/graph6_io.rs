// graph6 round trip. Pass a .g6 file to summarise its graphs instead.
// $ cargo run --example graph6_io -- graphs.g6
use srgrank::graph6::{decode_graph6, decode_graph6_lines, to_graph6_string};
use srgrank::{srg_params, Graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    if let Some(path) = std::env::args().nth(1) {
        for (i, g) in decode_graph6_lines(&std::fs::read(path)?)?.iter().enumerate() {
            let params = srg_params(g).map(|p| p.to_string()).unwrap_or_else(|_| "-".into());
            println!("{i}: n={} edges={} rank2={} srg={params}", g.n(), g.edge_count(), g.rank2());
        }
        return Ok(());
    }
    let petersen = Graph::from_edges(
        10,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
          (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
    )?;
    let s = to_graph6_string(&petersen);
    println!("{s}");
    let back = decode_graph6(s.as_bytes())?;
    println!("round trip equal: {}", back.adjacency() == petersen.adjacency());
    println!("params {}", srg_params(&back)?);
    Ok(())
}
