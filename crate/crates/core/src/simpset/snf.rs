use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A sparse integer matrix as a triplet list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn push(&mut self, r: usize, c: usize, v: i64) {
        if v != 0 {
            self.entries.push((r, c, v));
        }
    }
}

/// Rank and invariant factors (the nonzero diagonal of the Smith normal form, each
/// dividing the next; units included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub rank: usize,
    pub diagonal: Vec<u64>,
}

impl SnfResult {
    /// Invariant factors that are at least 2.
    pub fn torsion(&self) -> Vec<u64> {
        self.diagonal.iter().copied().filter(|&d| d > 1).collect()
    }
}

trait Ring: Clone + Debug + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs_key(&self) -> Result<u128>;
    fn add(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Result<Self>;
    fn div_exact(&self, o: &Self) -> Self;
    fn divides(&self, o: &Self) -> bool;
    fn ext_gcd(&self, o: &Self) -> Result<(Self, Self, Self)>;
    fn to_u64_abs(&self) -> Result<u64>;
    fn gcd_lcm(a: &Self, b: &Self) -> Result<(Self, Self)>;
}

macro_rules! prim_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn is_zero(&self) -> bool {
                *self == 0
            }
            fn abs_key(&self) -> Result<u128> {
                Ok(self.unsigned_abs() as u128)
            }
            fn add(&self, o: &Self) -> Result<Self> {
                self.checked_add(*o).ok_or(Error::Overflow)
            }
            fn mul(&self, o: &Self) -> Result<Self> {
                self.checked_mul(*o).ok_or(Error::Overflow)
            }
            fn neg(&self) -> Result<Self> {
                self.checked_neg().ok_or(Error::Overflow)
            }
            fn div_exact(&self, o: &Self) -> Self {
                self / o
            }
            fn divides(&self, o: &Self) -> bool {
                o % self == 0
            }
            fn ext_gcd(&self, o: &Self) -> Result<(Self, Self, Self)> {
                // returns (g, a, b) with a*self + b*o = g > 0
                let (mut r0, mut r1) = (*self, *o);
                let (mut s0, mut s1): ($t, $t) = (1, 0);
                let (mut t0, mut t1): ($t, $t) = (0, 1);
                while r1 != 0 {
                    let q = r0 / r1;
                    let r2 = r0.checked_sub(q.checked_mul(r1).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                    let s2 = s0.checked_sub(q.checked_mul(s1).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                    let t2 = t0.checked_sub(q.checked_mul(t1).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                    r0 = r1;
                    r1 = r2;
                    s0 = s1;
                    s1 = s2;
                    t0 = t1;
                    t1 = t2;
                }
                if r0 < 0 {
                    Ok((r0.checked_neg().ok_or(Error::Overflow)?, s0.checked_neg().ok_or(Error::Overflow)?, t0.checked_neg().ok_or(Error::Overflow)?))
                } else {
                    Ok((r0, s0, t0))
                }
            }
            fn to_u64_abs(&self) -> Result<u64> {
                u64::try_from(self.unsigned_abs()).map_err(|_| Error::Overflow)
            }
            fn gcd_lcm(a: &Self, b: &Self) -> Result<(Self, Self)> {
                let g = a.gcd(b);
                if g == 0 {
                    return Ok((0, 0));
                }
                let l = (a / g).checked_mul(*b).ok_or(Error::Overflow)?.abs();
                Ok((g, l))
            }
        }
    };
}

prim_ring!(i64);
prim_ring!(i128);

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_key(&self) -> Result<u128> {
        Ok(self.abs().to_u128().unwrap_or(u128::MAX))
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> Result<Self> {
        Ok(-self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn divides(&self, o: &Self) -> bool {
        Zero::is_zero(&(o % self))
    }
    fn ext_gcd(&self, o: &Self) -> Result<(Self, Self, Self)> {
        let e = self.extended_gcd(o);
        if e.gcd.is_negative() {
            Ok((-e.gcd, -e.x, -e.y))
        } else {
            Ok((e.gcd, e.x, e.y))
        }
    }
    fn to_u64_abs(&self) -> Result<u64> {
        self.abs().to_u64().ok_or(Error::Overflow)
    }
    fn gcd_lcm(a: &Self, b: &Self) -> Result<(Self, Self)> {
        let g = a.gcd(b);
        if Zero::is_zero(&g) {
            return Ok((g.clone(), g));
        }
        Ok((g.clone(), (a / &g * b).abs()))
    }
}

/// Exact Smith normal form diagonal of an integer matrix. Runs in `i64`, retrying in
/// `i128` and then arbitrary precision on overflow.
pub fn smith_normal_form(m: &SparseMatrix) -> Result<SnfResult> {
    match snf_in::<i64>(m) {
        Err(Error::Overflow) => match snf_in::<i128>(m) {
            Err(Error::Overflow) => snf_in::<BigInt>(m),
            other => other,
        },
        other => other,
    }
}

struct Work<T> {
    rows: Vec<BTreeMap<usize, T>>,
    cols: Vec<BTreeSet<usize>>,
}

impl<T: Ring> Work<T> {
    fn set(&mut self, r: usize, c: usize, v: T) {
        if v.is_zero() {
            if self.rows[r].remove(&c).is_some() {
                self.cols[c].remove(&r);
            }
        } else {
            self.rows[r].insert(c, v);
            self.cols[c].insert(r);
        }
    }

    fn get(&self, r: usize, c: usize) -> Option<&T> {
        self.rows[r].get(&c)
    }

    // row_a <- x*row_a + y*row_b ; row_b <- z*row_a + w*row_b (simultaneously)
    fn row_combine(&mut self, a: usize, b: usize, x: &T, y: &T, z: &T, w: &T) -> Result<()> {
        let cols: BTreeSet<usize> = self.rows[a].keys().chain(self.rows[b].keys()).copied().collect();
        let zero = T::from_i64(0);
        for c in cols {
            let va = self.get(a, c).cloned().unwrap_or_else(|| zero.clone());
            let vb = self.get(b, c).cloned().unwrap_or_else(|| zero.clone());
            let na = x.mul(&va)?.add(&y.mul(&vb)?)?;
            let nb = z.mul(&va)?.add(&w.mul(&vb)?)?;
            self.set(a, c, na);
            self.set(b, c, nb);
        }
        Ok(())
    }

    fn col_combine(&mut self, a: usize, b: usize, x: &T, y: &T, z: &T, w: &T) -> Result<()> {
        let rows: BTreeSet<usize> = self.cols[a].iter().chain(self.cols[b].iter()).copied().collect();
        let zero = T::from_i64(0);
        for r in rows {
            let va = self.get(r, a).cloned().unwrap_or_else(|| zero.clone());
            let vb = self.get(r, b).cloned().unwrap_or_else(|| zero.clone());
            let na = x.mul(&va)?.add(&y.mul(&vb)?)?;
            let nb = z.mul(&va)?.add(&w.mul(&vb)?)?;
            self.set(r, a, na);
            self.set(r, b, nb);
        }
        Ok(())
    }
}

fn snf_in<T: Ring>(m: &SparseMatrix) -> Result<SnfResult> {
    let mut w: Work<T> = Work { rows: vec![BTreeMap::new(); m.rows], cols: vec![BTreeSet::new(); m.cols] };
    for &(r, c, v) in &m.entries {
        let cur = w.get(r, c).cloned().unwrap_or_else(|| T::from_i64(0));
        let nv = cur.add(&T::from_i64(v))?;
        w.set(r, c, nv);
    }
    let one = T::from_i64(1);
    let zero = T::from_i64(0);
    let mut pivots: Vec<T> = Vec::new();
    loop {
        // Pivot: smallest absolute value, ties broken by sparsity then position.
        let mut best: Option<(u128, usize, usize, usize)> = None;
        for (r, row) in w.rows.iter().enumerate() {
            for (&c, v) in row {
                let key = (v.abs_key()?, row.len() + w.cols[c].len(), r, c);
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, r, c)) = best else { break };
        loop {
            // Clear column c below/above the pivot.
            let others: Vec<usize> = w.cols[c].iter().copied().filter(|&r2| r2 != r).collect();
            for r2 in others {
                let p = w.get(r, c).cloned().expect("pivot present");
                let Some(v) = w.get(r2, c).cloned() else { continue };
                if p.divides(&v) {
                    let q = v.div_exact(&p).neg()?;
                    w.row_combine(r2, r, &one, &q, &zero, &one)?;
                } else {
                    let (g, a, b) = p.ext_gcd(&v)?;
                    let z = v.div_exact(&g).neg()?;
                    let ww = p.div_exact(&g);
                    w.row_combine(r, r2, &a, &b, &z, &ww)?;
                }
            }
            let p = w.get(r, c).cloned().expect("pivot present");
            let bad = w.rows[r].iter().find(|(&c2, v)| c2 != c && !p.divides(v)).map(|(&c2, v)| (c2, v.clone()));
            match bad {
                None => {
                    let rest: Vec<usize> = w.rows[r].keys().copied().filter(|&c2| c2 != c).collect();
                    for c2 in rest {
                        w.set(r, c2, zero.clone());
                    }
                    break;
                }
                Some((c2, v)) => {
                    let (g, a, b) = p.ext_gcd(&v)?;
                    let z = v.div_exact(&g).neg()?;
                    let ww = p.div_exact(&g);
                    w.col_combine(c, c2, &a, &b, &z, &ww)?;
                }
            }
        }
        let p = w.get(r, c).cloned().expect("pivot present");
        w.set(r, c, zero.clone());
        pivots.push(p);
    }
    // Normalize to a divisibility chain.
    let k = pivots.len();
    for i in 0..k {
        for j in i + 1..k {
            let (g, l) = T::gcd_lcm(&pivots[i], &pivots[j])?;
            pivots[i] = g;
            pivots[j] = l;
        }
    }
    let mut diagonal = pivots.iter().map(|p| p.to_u64_abs()).collect::<Result<Vec<u64>>>()?;
    diagonal.sort();
    Ok(SnfResult { rank: k, diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.push(i, j, v);
            }
        }
        m
    }

    #[test]
    fn classic_examples() {
        let m = dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(smith_normal_form(&m).unwrap().diagonal, vec![2, 6, 12]);
        let m = dense(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_normal_form(&m).unwrap().diagonal, vec![1, 6]);
        let m = dense(&[&[0, 0], &[0, 0]]);
        assert_eq!(smith_normal_form(&m).unwrap().rank, 0);
    }

    #[test]
    fn overflow_promotes() {
        let big = i64::MAX / 2;
        let m = dense(&[&[big, big - 1], &[big - 1, big - 2]]);
        // det = big(big-2) - (big-1)^2 = -1
        let r = smith_normal_form(&m).unwrap();
        assert_eq!(r.diagonal, vec![1, 1]);
    }
}
