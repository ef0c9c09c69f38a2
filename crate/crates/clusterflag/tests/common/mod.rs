#![allow(dead_code)]

use clusterflag::flag_seeds::FlagType;
use clusterflag::plucker_algebra::combinations;
use clusterflag::young_tableaux::Tableau;

/// Every flag type with `n <= max_n` and at most `max_k` steps.
pub fn flags(max_n: u32, max_k: usize) -> Vec<FlagType> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for mask in 1u32..(1 << (n - 1)) {
            let dims: Vec<u32> = (1..n).filter(|d| mask & (1 << (d - 1)) != 0).collect();
            if dims.len() <= max_k {
                out.push(FlagType::new(n, dims).unwrap());
            }
        }
    }
    out
}

/// All semistandard tableaux with at most two rows, entries in `[m]` and
/// first row of length at most `len`.
pub fn two_row_tableaux(m: u32, len: usize) -> Vec<Tableau> {
    fn rows(m: u32, len: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for r in &frontier {
                let lo = r.last().copied().unwrap_or(1);
                for x in lo..=m {
                    let mut r2: Vec<u32> = r.clone();
                    r2.push(x);
                    next.push(r2);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
    let all = rows(m, len);
    let mut out = Vec::new();
    for top in &all {
        for bottom in all.iter().filter(|b| b.len() <= top.len()) {
            if bottom.iter().zip(top).all(|(b, t)| b > t) {
                let rs = if bottom.is_empty() { vec![top.clone()] } else { vec![top.clone(), bottom.clone()] };
                if let Ok(t) = Tableau::new(rs) {
                    out.push(t);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn subsets(n: u32, size: usize) -> Vec<Vec<u32>> {
    combinations(n as usize, size)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x as u32 + 1).collect())
        .collect()
}

/// Every relation `R^s_{J,L}` with `|J| = p <= q = |L| <= dk < n`, as
/// `(n, p, q, dk, s, J, L)`.
pub fn relations(max_n: u32) -> impl Iterator<Item = (u32, u32, u32, u32, usize, Vec<u32>, Vec<u32>)> {
    (2..=max_n).flat_map(move |n| {
        (1..n).flat_map(move |dk| {
            (1..=dk).flat_map(move |q| {
                (1..=q).flat_map(move |p| {
                    let ls = subsets(n, q as usize);
                    subsets(n, p as usize).into_iter().flat_map(move |j| {
                        let ls = ls.clone();
                        ls.into_iter()
                            .flat_map(move |l| {
                                let j = j.clone();
                                (1..=p as usize).map(move |s| (n, p, q, dk, s, j.clone(), l.clone()))
                            })
                    })
                })
            })
        })
    })
}
