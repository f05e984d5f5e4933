#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Fourth-order central difference of order 1 or 2.
pub fn central_diff(f: impl Fn(f64) -> f64, x: f64, step: f64, order: usize) -> f64 {
    let (fm2, fm1, f0, fp1, fp2) = (
        f(x - 2.0 * step),
        f(x - step),
        f(x),
        f(x + step),
        f(x + 2.0 * step),
    );
    match order {
        1 => (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * step),
        2 => (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * step * step),
        _ => panic!("unsupported order {order}"),
    }
}

/// All set partitions of `{0, .., n-1}`, each as a list of block sizes.
pub fn partition_block_sizes(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] += 1;
            go(i + 1, n, blocks, out);
            blocks[b] -= 1;
        }
        blocks.push(1);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// `(G∘u)^(j)` from derivatives of `G` at `u(x)` and of `u` at `x`, summed
/// over set partitions. Returns the value and the sum of absolute terms.
pub fn faa_di_bruno(outer: &[f64], inner: &[f64], j: usize) -> (f64, f64) {
    if j == 0 {
        return (outer[0], outer[0].abs());
    }
    let mut sum = 0.0;
    let mut mag = 0.0;
    for blocks in partition_block_sizes(j) {
        let term = outer[blocks.len()] * blocks.iter().map(|&b| inner[b]).product::<f64>();
        sum += term;
        mag += term.abs();
    }
    (sum, mag)
}

/// Derivatives `0..=order` of the polynomial with coefficients `c` at `x`.
pub fn poly_derivs(c: &[f64], x: f64, order: usize) -> Vec<f64> {
    let mut cur = c.to_vec();
    let mut out = Vec::with_capacity(order + 1);
    for _ in 0..=order {
        out.push(cur.iter().rev().fold(0.0, |acc, &a| acc * x + a));
        cur = cur
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| i as f64 * a)
            .collect();
    }
    out
}
