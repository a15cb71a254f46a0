//! Splits `Σ_{k=1}^{N} f(T^k w) μ(k)` along the stage-`n` skeleton of a
//! Toeplitz sequence: a head `E'` of length `c'` up to the first period
//! boundary, `2^n` rows `Σ_i = Σ_j f(T^{c'+i+j·2^n} w) μ(c'+i+j·2^n)` for
//! `j < M`, and a tail `E''` of length `c'' < 2^n`.

use std::collections::HashMap;

use serde::Serialize;

use super::cylinder::{weighted_total, CylinderFunction, CylinderValue};
use crate::arith::MoebiusTable;
use crate::error::{domain, Result};
use crate::sequences::BitSequence;

#[derive(Debug, Clone, Serialize)]
pub struct Row<V> {
    /// `1..=2^n`.
    pub index: u64,
    pub sum: V,
    pub terms: u64,
    /// Whether some window of the row meets an unfilled place.
    pub touches_hole: bool,
    /// Whether `f(T^k w)` takes a single value along the row.
    pub constant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowDecomposition<V: CylinderValue> {
    pub stage: u32,
    pub period: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub c_head: u64,
    pub c_tail: u64,
    /// Terms per row, `(N - c' - c'') / 2^n`.
    pub terms_per_row: u64,
    /// `M = ⌊N / 2^n⌋`.
    pub m: u64,
    pub e_head: V,
    pub e_tail: V,
    pub rows: Vec<Row<V>>,
    /// `E' + Σ_i Σ_i + E''`.
    pub total: V,
    /// The sum computed without regrouping.
    pub flat_total: V,
    /// `F`.
    pub bound: V::Norm,
    pub regrouping_exact: bool,
    /// `|E' + E''| ≤ 2^n F`.
    pub boundary_bound_holds: bool,
    /// `|Σ_i| ≤ M F` for every row.
    pub row_bound_holds: bool,
    pub hole_free_rows: u64,
    /// Every hole-free row is constant.
    pub hole_free_rows_constant: bool,
}

pub fn row_decomposition<V: CylinderValue, S: BitSequence + ?Sized>(
    f: &CylinderFunction<V>,
    w: &S,
    stage: u32,
    mu: &MoebiusTable,
    n: u64,
) -> Result<RowDecomposition<V>> {
    let skel = w.toeplitz_skeleton(stage)?;
    let p = skel.period;
    if n <= p {
        return Err(domain!("row decomposition needs N > 2^{stage} = {p}, got {n}"));
    }
    mu.ensure_covers(n)?;
    // Periods of the skeleton start right after the last hole residue.
    let start = skel.hole_residues.last().map_or(0, |&h| (h + 1) % p);
    let c_head = (start + p - 1) % p;
    let terms_per_row = (n - c_head) / p;
    let c_tail = n - c_head - terms_per_row * p;

    let touches: Vec<bool> = (1..=p)
        .map(|i| {
            (0..f.length() as i64).any(|j| {
                let pos = (f.offset() + (c_head + i) as i64 + j).rem_euclid(p as i64) as u64;
                skel.is_hole(pos)
            })
        })
        .collect();

    let mut head: HashMap<usize, i64> = HashMap::new();
    let mut tail: HashMap<usize, i64> = HashMap::new();
    let mut rows: Vec<HashMap<usize, i64>> = vec![HashMap::new(); p as usize];
    let mut first_word: Vec<Option<usize>> = vec![None; p as usize];
    let mut constant = vec![true; p as usize];
    for k in 1..=n {
        let word = f.word_at(w, k)?;
        let m = mu.mu(k) as i64;
        if k <= c_head {
            *head.entry(word).or_default() += m;
        } else if k > c_head + terms_per_row * p {
            *tail.entry(word).or_default() += m;
        } else {
            let r = ((k - c_head - 1) % p) as usize;
            *rows[r].entry(word).or_default() += m;
            match first_word[r] {
                None => first_word[r] = Some(word),
                Some(w0) if f.table()[w0].same(&f.table()[word]) => {}
                Some(_) => constant[r] = false,
            }
        }
    }

    let e_head = f.combine(&head);
    let e_tail = f.combine(&tail);
    let rows: Vec<Row<V>> = rows
        .iter()
        .enumerate()
        .map(|(r, counts)| Row {
            index: r as u64 + 1,
            sum: f.combine(counts),
            terms: terms_per_row,
            touches_hole: touches[r],
            constant: constant[r],
        })
        .collect();
    let total = rows.iter().fold(e_head.plus(&e_tail), |acc, r| acc.plus(&r.sum));
    let flat_total = weighted_total(f, w, mu, n)?;
    let bound = f.bound();
    let m = n / p;
    let boundary_bound_holds = V::norm_le_multiple(&e_head.plus(&e_tail).norm(), p, &bound);
    let row_bound_holds = rows.iter().all(|r| V::norm_le_multiple(&r.sum.norm(), m, &bound));
    let hole_free_rows = rows.iter().filter(|r| !r.touches_hole).count() as u64;
    let hole_free_rows_constant = rows.iter().filter(|r| !r.touches_hole).all(|r| r.constant);
    Ok(RowDecomposition {
        stage,
        period: p,
        n,
        c_head,
        c_tail,
        terms_per_row,
        m,
        regrouping_exact: total.same(&flat_total),
        e_head,
        e_tail,
        rows,
        total,
        flat_total,
        bound,
        boundary_bound_holds,
        row_bound_holds,
        hole_free_rows,
        hole_free_rows_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{moebius_sieve, ratio, ExactRational};
    use crate::sequences::{ThueMorse, ThueToeplitz};

    fn table(len: u32, seed: i64) -> Vec<ExactRational> {
        (0..1i64 << len).map(|i| ratio((i * 7 + seed) % 11 - 5, 1 + (i + seed) % 4)).collect()
    }

    #[test]
    fn regrouping_is_a_partition() {
        let mu = moebius_sieve(20_000).unwrap();
        for (stage, len, off) in [(1, 1, 0), (3, 2, 0), (4, 3, -1), (6, 4, 2)] {
            let f = CylinderFunction::new(off, len, table(len, stage as i64)).unwrap();
            let d = row_decomposition(&f, &ThueToeplitz, stage, &mu, 20_000).unwrap();
            assert!(d.regrouping_exact);
            assert_eq!(d.total, d.flat_total);
            assert_eq!(d.c_head + d.c_tail + d.terms_per_row * d.period, 20_000);
            assert!(d.c_head < d.period && d.c_tail < d.period);
            assert_eq!(d.rows.len() as u64, 1 << stage);
            assert!(d.hole_free_rows + len as u64 >= 1 << stage);
            assert!(d.hole_free_rows_constant);
        }
    }

    #[test]
    fn thue_toeplitz_head_aligns_to_period_start() {
        let mu = moebius_sieve(1000).unwrap();
        let f = CylinderFunction::constant(ratio(1, 1));
        let d = row_decomposition(&f, &ThueToeplitz, 4, &mu, 1000).unwrap();
        assert_eq!(d.c_head, 15);
        assert_eq!(d.m, 62);
    }

    #[test]
    fn preconditions() {
        let mu = moebius_sieve(100).unwrap();
        let f = CylinderFunction::constant(ratio(1, 1));
        assert!(matches!(row_decomposition(&f, &ThueMorse, 2, &mu, 100), Err(crate::Error::Unsupported(_))));
        assert!(row_decomposition(&f, &ThueToeplitz, 4, &mu, 16).is_err());
        assert!(row_decomposition(&f, &ThueToeplitz, 4, &mu, 101).is_err());
    }
}
