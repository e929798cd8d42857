// Sort switched graphs into isomorphism classes.
// $ cargo run --release --example isomorphism_classes
use srgrank::graph6::decode_graph6;
use srgrank::iso::{canonical_labeling, class_report};
use srgrank::switching::{replay_published_chain, switch_census};

fn main() -> srgrank::Result<()> {
    let chain = replay_published_chain()?.graphs()?;
    let base = &chain[chain.len() - 2];
    let census = switch_census(base);
    println!("census of the rank-{} step", base.rank2());
    for (rank, group) in &census.by_rank {
        let graphs = group
            .graphs
            .iter()
            .map(|s| decode_graph6(s.as_bytes()))
            .collect::<srgrank::Result<Vec<_>>>()?;
        let report = class_report(&graphs)?;
        let largest = report.classes.iter().map(|c| c.size).max().unwrap_or(0);
        println!("  rank {rank}: {} graphs, {} classes, largest class {largest}", graphs.len(), report.classes.len());
    }

    let c = canonical_labeling(&chain[0])?;
    println!("Sp(6,2): {} leaves visited, {} automorphisms found", c.leaves_visited, c.automorphisms.len());
    Ok(())
}
