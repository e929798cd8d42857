// Rank, row basis and membership over GF(2).
// $ cargo run --example gf2_rank
use srgrank::{BitMatrix, BitVec};

fn main() -> srgrank::Result<()> {
    let m = BitMatrix::from_text("3 4\n1100\n0110\n1010")?;
    println!("rank {}", m.rank2());

    let basis = m.row_basis();
    println!("basis\n{}", basis.to_text());

    // 1100 + 0110 = 1010 is in the row space, 0001 is not
    let inside = BitVec::from_bools(&[true, false, true, false]);
    let outside = BitVec::from_bools(&[false, false, false, true]);
    println!("1010 in span: {}", m.in_row_space(&inside)?);
    println!("0001 in span: {}", m.in_row_space(&outside)?);

    let j = BitMatrix::ones(2, 2);
    println!("rank(M kron J) = {}", m.kron2(&j).rank2());
    Ok(())
}
