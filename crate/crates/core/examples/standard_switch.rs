// Switch Sp(2nu,2) on its standard coclique set: same parameters, 2-rank up by two.
// $ cargo run --example standard_switch
use srgrank::graph::format_row_vector;
use srgrank::iso::are_isomorphic;
use srgrank::switching::{apply_switch, standard_switching_labels, standard_switching_set, validate_switching_set};
use srgrank::{srg_params, symplectic_graph};

fn main() -> srgrank::Result<()> {
    for nu in [3, 4] {
        let g = symplectic_graph(nu)?;
        let labels = standard_switching_labels(nu, 0)?;
        let set = validate_switching_set(&g, &standard_switching_set(nu, 0)?)?;
        let h = apply_switch(&g, &set)?;
        let rows: Vec<String> = labels.iter().map(|&l| format_row_vector(l, 2 * nu as usize)).collect();
        println!("nu={nu} set {{{}}}", rows.join(", "));
        println!("  {} -> {}", srg_params(&g)?, srg_params(&h)?);
        println!("  rank2 {} -> {}", g.rank2(), h.rank2());
        println!("  isomorphic: {}", are_isomorphic(&g, &h)?);
    }
    Ok(())
}
