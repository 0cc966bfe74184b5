//! Dense linear algebra over Z/p^r.
//!
//! The workhorse is the Howell normal form: an echelon form whose row
//! span is closed under annihilators, which makes row-span membership
//! decidable and nullspaces computable over a ring with zero divisors.
//! For r = 1 this degenerates to ordinary Gaussian elimination over F_p.
//!
//! Pivoting is deterministic: the first unprocessed row whose entry in
//! the current column has minimal p-adic valuation wins, ties broken by
//! lowest row index, and each pivot is scaled to p^k (unit part 1).

use crate::error::{Error, Result};
use crate::series::ring::Modulus;

/// A dense matrix of residues in [0, m), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn new(modulus: Modulus, rows: usize, cols: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        let m = modulus.value();
        ModMatrix {
            modulus,
            rows,
            cols,
            entries: entries.into_iter().map(|e| e % m).collect(),
        }
    }

    pub fn zero(modulus: Modulus, rows: usize, cols: usize) -> Self {
        ModMatrix {
            modulus,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut m = Self::zero(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(modulus: Modulus, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend_from_slice(row);
        }
        Self::new(modulus, r, c, entries)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v % self.modulus.value();
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.modulus, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.modulus != other.modulus {
            return Err(Error::Unsupported("matrix dimension/modulus mismatch".into()));
        }
        let md = self.modulus;
        let mut out = Self::zero(md, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = md.add(out.get(i, j), md.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// A*v for a column vector v.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let md = self.modulus;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for c in 0..self.cols {
                    acc = md.add(acc, md.mul(self.get(i, c), v[c]));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }
}

struct WorkRow {
    m: Vec<u64>,
    t: Vec<u64>,
}

/// Core elimination. Returns (pivot rows, kernel t-parts). Every work
/// row maintains t·A = m; rows left with m = 0 donate their t-part to
/// the left kernel.
fn howell_eliminate(a: &ModMatrix, track: bool) -> (Vec<WorkRow>, Vec<Vec<u64>>) {
    let md = a.modulus;
    let p = md.prime();
    let r_exp = md.exponent();
    let mut rows: Vec<WorkRow> = (0..a.rows)
        .map(|i| WorkRow {
            m: a.row(i).to_vec(),
            t: if track {
                let mut t = vec![0; a.rows];
                t[i] = 1;
                t
            } else {
                Vec::new()
            },
        })
        .collect();

    let sub_scaled = |dst: &mut WorkRow, src: &WorkRow, factor: u64, md: Modulus| {
        if factor == 0 {
            return;
        }
        for (d, s) in dst.m.iter_mut().zip(&src.m) {
            *d = md.sub(*d, md.mul(factor, *s));
        }
        for (d, s) in dst.t.iter_mut().zip(&src.t) {
            *d = md.sub(*d, md.mul(factor, *s));
        }
    };

    let mut pivot_count = 0usize;
    for col in 0..a.cols {
        // deterministic pivot: minimal p-adic valuation, lowest index
        let mut best: Option<(u32, usize)> = None;
        for (i, row) in rows.iter().enumerate().skip(pivot_count) {
            if let Some(v) = md.valuation(row.m[col]) {
                if best.map_or(true, |(bv, _)| v < bv) {
                    best = Some((v, i));
                }
            }
        }
        let Some((k, idx)) = best else { continue };
        rows.swap(pivot_count, idx);

        // scale so the pivot is exactly p^k
        let (_, unit) = md.val_unit(rows[pivot_count].m[col]).expect("nonzero pivot");
        let unit_inv = md.inv(unit).expect("unit part is invertible");
        for e in rows[pivot_count].m.iter_mut() {
            *e = md.mul(*e, unit_inv);
        }
        for e in rows[pivot_count].t.iter_mut() {
            *e = md.mul(*e, unit_inv);
        }
        let pk = md.pow(p, k as u64);

        // eliminate below (valuation >= k makes the division exact),
        // reduce above modulo the pivot
        let pivot_row = WorkRow {
            m: rows[pivot_count].m.clone(),
            t: rows[pivot_count].t.clone(),
        };
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pivot_count {
                continue;
            }
            let e = row.m[col];
            if e == 0 {
                continue;
            }
            let factor = if i > pivot_count {
                debug_assert!(e % pk == 0, "pivot valuation was not minimal");
                e / pk
            } else {
                e / pk
            };
            sub_scaled(row, &pivot_row, factor, md);
        }

        // a non-unit pivot needs its annihilator row kept in the span
        if k > 0 {
            let ann = md.pow(p, (r_exp - k) as u64);
            let mut extra = WorkRow {
                m: pivot_row.m.iter().map(|&e| md.mul(ann, e)).collect(),
                t: pivot_row.t.iter().map(|&e| md.mul(ann, e)).collect(),
            };
            extra.m[col] = 0; // p^(r-k) * p^k = 0 mod p^r
            rows.push(extra);
        }
        pivot_count += 1;
    }

    let kernel = rows[pivot_count..]
        .iter()
        .filter(|row| row.t.iter().any(|&e| e != 0))
        .map(|row| row.t.clone())
        .collect();
    rows.truncate(pivot_count);
    (rows, kernel)
}

/// Howell normal form H of A together with a transform T with T·A = H.
///
/// H keeps one row per pivot (at most `cols` rows); a matrix whose rows
/// all eliminate to zero comes back as a zero matrix of the input shape
/// with the identity transform.
pub fn howell_form(a: &ModMatrix) -> (ModMatrix, ModMatrix) {
    let (pivots, _) = howell_eliminate(a, true);
    if pivots.is_empty() {
        return (
            ModMatrix::zero(a.modulus, a.rows, a.cols),
            ModMatrix::identity(a.modulus, a.rows),
        );
    }
    let h = ModMatrix::from_rows(a.modulus, pivots.iter().map(|w| w.m.clone()).collect());
    let t = ModMatrix::from_rows(a.modulus, pivots.iter().map(|w| w.t.clone()).collect());
    (h, t)
}

/// Number of pivot rows of the Howell form (the rank when r = 1).
pub fn rank(a: &ModMatrix) -> usize {
    howell_eliminate(a, false).0.len()
}

/// Canonical generating set for {v : A·v = 0 mod m}, including p-torsion
/// generators when r > 1. Empty iff the nullspace is {0}.
pub fn nullspace(a: &ModMatrix) -> Vec<Vec<u64>> {
    let (_, kernel) = howell_eliminate(&a.transpose(), true);
    if kernel.is_empty() {
        return Vec::new();
    }
    // Howell-canonicalize the generators so identical nullspaces always
    // come back as identical lists.
    let gens = ModMatrix::from_rows(a.modulus, kernel);
    let (h, _) = howell_form(&gens);
    (0..h.rows())
        .map(|i| h.row(i).to_vec())
        .filter(|row| row.iter().any(|&e| e != 0))
        .collect()
}

/// Membership of v in the row span of a matrix already in Howell form.
pub fn in_row_span(h: &ModMatrix, v: &[u64]) -> bool {
    assert_eq!(v.len(), h.cols());
    let md = h.modulus();
    let p = md.prime();
    let mut v: Vec<u64> = v.iter().map(|&e| e % md.value()).collect();
    for i in 0..h.rows() {
        let row = h.row(i);
        let Some(col) = row.iter().position(|&e| e != 0) else {
            continue;
        };
        if v[col] == 0 {
            continue;
        }
        let k = md.valuation(row[col]).expect("pivot nonzero");
        let pk = md.pow(p, k as u64);
        if v[col] % pk != 0 {
            return false;
        }
        let factor = v[col] / pk;
        for (dst, src) in v.iter_mut().zip(row) {
            *dst = md.sub(*dst, md.mul(factor, *src));
        }
    }
    v.iter().all(|&e| e == 0)
}
