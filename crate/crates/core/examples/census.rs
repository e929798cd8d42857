// Switch Sp(6,2) on each of its size-4 switching sets and tally the 2-ranks.
// $ cargo run --release --example census
use srgrank::switching::switch_census;
use srgrank::symplectic_graph;

fn main() -> srgrank::Result<()> {
    let census = switch_census(&symplectic_graph(3)?);
    println!("base rank {}, {} switching sets", census.base_rank, census.total());
    for (rank, group) in &census.by_rank {
        println!("  rank {rank}: {}", group.count);
    }
    Ok(())
}
