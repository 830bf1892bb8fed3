//! Exact sphere and ball sizes in the Cayley graph of a right-angled Artin
//! group, from its clique polynomial.
//!
//! With `C(x) = sum_k c_k x^k` counting `k`-cliques (`c_0 = 1`) and `d` the
//! clique number, the spherical growth series is
//! `(1+t)^d / P(t)` where `P(t) = sum_k c_k (-2t)^k (1+t)^(d-k)`.

use crate::graph::{FlagComplex, SimplicialGraph};

fn binomial_row(n: usize) -> Vec<i128> {
    let mut row = vec![1i128];
    for _ in 0..n {
        let mut next = vec![1i128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// Number of elements of each length `0..=r`, saturating at `i128::MAX`.
pub fn sphere_sizes(g: &SimplicialGraph, r: usize) -> Vec<i128> {
    let flag = FlagComplex::new(g.clone());
    let mut c = vec![1i128];
    c.extend(flag.f_vector().iter().map(|&n| n as i128));
    let d = c.len() - 1;

    // P(t) coefficients
    let mut p = vec![0i128; d + 1];
    for (k, &ck) in c.iter().enumerate() {
        let pow = (-2i128).pow(k as u32);
        for (j, b) in binomial_row(d - k).into_iter().enumerate() {
            p[k + j] += ck * pow * b;
        }
    }
    debug_assert_eq!(p[0], 1);
    let num = binomial_row(d);

    let mut s: Vec<i128> = Vec::with_capacity(r + 1);
    for n in 0..=r {
        let v = (1..=d.min(n)).try_fold(num.get(n).copied().unwrap_or(0), |v, k| {
            p[k].checked_mul(s[n - k]).and_then(|t| v.checked_sub(t))
        });
        match v {
            Some(v) if v != i128::MAX => s.push(v),
            _ => {
                s.resize(r + 1, i128::MAX);
                break;
            }
        }
    }
    s
}

/// Number of elements of length at most `r`, saturating.
pub fn ball_size(g: &SimplicialGraph, r: usize) -> i128 {
    sphere_sizes(g, r).into_iter().fold(0i128, |a, b| a.saturating_add(b))
}
