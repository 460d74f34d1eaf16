//! Smith normal form of a small integer matrix, with transforms.
//!
//! The normal form `L * A * R = D` has a diagonal `D` forming a
//! divisibility chain; its nonzero entries are the invariant factors, and
//! they are what homology computations read off a boundary matrix. The
//! sparse front end computes the same invariants without dense transforms.

use num_bigint::BigInt;
use tdlc::homology::{smith_invariants, smith_normal_form, SparseMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows: Vec<Vec<i64>> = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
    println!("A =");
    for row in &rows {
        println!("  {row:?}");
    }

    let matrix: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let smith = smith_normal_form(&matrix, true)?;
    println!();
    println!("diagonal (divisibility chain): {:?}", smith.diagonal);
    println!("rank: {}", smith.rank);

    let left = smith.left.as_ref().expect("requested transforms");
    let right = smith.right.as_ref().expect("requested transforms");
    println!("L = {left:?}");
    println!("R = {right:?}");

    // Check L * A * R really is the diagonal.
    let n = matrix.len();
    let product = multiply(&multiply(left, &matrix, n), right, n);
    println!("L * A * R =");
    for row in &product {
        println!("  {row:?}");
    }

    // The sparse path sees the same invariant factors.
    let mut triplets = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                triplets.push((i as u32, j as u32, v));
            }
        }
    }
    let sparse = SparseMatrix::from_triplets(n, n, &triplets)?;
    let invariants = smith_invariants(&sparse)?;
    println!();
    println!("sparse front end: rank {}, factors {:?}", invariants.rank, invariants.factors);
    Ok(())
}

fn multiply(a: &[Vec<BigInt>], b: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::from(0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}
