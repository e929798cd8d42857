// Two routes from rank 6 to 18: the published switching sets, and a greedy search.
// Pass --census to tally every step against the published counts (slower).
// $ cargo run --release --example rank_ascent -- --census
use srgrank::switching::{
    censuses_along, compare_published_counts, rank_ascent_chain, replay_published_chain,
};
use srgrank::symplectic_graph;

fn main() -> srgrank::Result<()> {
    let replay = replay_published_chain()?;
    println!("replayed  {:?}", replay.ranks());
    for step in &replay.steps {
        println!("  {:?} -> {}", step.set, step.rank_after);
    }

    let greedy = rank_ascent_chain(&symplectic_graph(3)?, 10);
    println!("greedy    {:?}", greedy.ranks());

    if std::env::args().any(|a| a == "--census") {
        let cmp = compare_published_counts(&censuses_along(&replay)?);
        for c in &cmp.checks {
            let mark = if c.matches { "ok" } else { "MISMATCH" };
            println!("  step {} rank {}: {} (published {}) {mark}", c.iteration, c.rank, c.observed, c.published);
        }
    }
    Ok(())
}
