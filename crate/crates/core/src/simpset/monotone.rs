use serde::{Deserialize, Serialize};

/// A monotone map `[k] -> [n]`, stored by its images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monotone {
    pub images: Vec<usize>,
    pub target: usize,
}

impl Monotone {
    pub fn new(images: Vec<usize>, target: usize) -> Option<Self> {
        if images.is_empty() || images.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        if *images.last().unwrap() > target {
            return None;
        }
        Some(Monotone { images, target })
    }

    pub fn identity(n: usize) -> Self {
        Monotone { images: (0..=n).collect(), target: n }
    }

    pub fn constant(k: usize, value: usize, target: usize) -> Self {
        Monotone { images: vec![value; k + 1], target }
    }

    /// Coface `δ^i : [n-1] -> [n]`, skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        let images = (0..n).map(|x| if x < i { x } else { x + 1 }).collect();
        Monotone { images, target: n }
    }

    /// Codegeneracy `σ^i : [n+1] -> [n]`, hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        let images = (0..=n + 1).map(|x| if x <= i { x } else { x - 1 }).collect();
        Monotone { images, target: n }
    }

    /// Source dimension `k` of `[k] -> [n]`.
    pub fn dim(&self) -> usize {
        self.images.len() - 1
    }

    pub fn at(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Monotone) -> Monotone {
        assert_eq!(other.target, self.dim());
        Monotone { images: other.images.iter().map(|&x| self.images[x]).collect(), target: self.target }
    }

    pub fn is_injective(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.images[0] == 0
            && *self.images.last().unwrap() == self.target
            && self.images.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// All monotone maps `[k] -> [n]` in lexicographic order.
    pub fn all(k: usize, n: usize) -> Vec<Monotone> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; k + 1];
        loop {
            out.push(Monotone { images: cur.clone(), target: n });
            let mut pos = k as isize;
            while pos >= 0 && cur[pos as usize] == n {
                pos -= 1;
            }
            if pos < 0 {
                break;
            }
            let p = pos as usize;
            cur[p] += 1;
            for q in p + 1..=k {
                cur[q] = cur[p];
            }
        }
        out
    }

    /// All injective monotone maps `[k] -> [n]`.
    pub fn injections(k: usize, n: usize) -> Vec<Monotone> {
        Monotone::all(k, n).into_iter().filter(|m| m.is_injective()).collect()
    }

    /// All surjective monotone maps `[k] -> [n]`.
    pub fn surjections(k: usize, n: usize) -> Vec<Monotone> {
        Monotone::all(k, n).into_iter().filter(|m| m.is_surjective()).collect()
    }

    pub fn label(&self) -> String {
        self.images.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
    }
}

/// Number of monotone maps `[k] -> [n]`, i.e. `C(n+k+1, k+1)`.
pub fn monotone_count(k: usize, n: usize) -> usize {
    binomial(n + k + 1, k + 1)
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// The list of elementary operators `φ^*` decomposes into: faces first, then degeneracies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Face(usize),
    Degeneracy(usize),
}

/// Decompose `φ : [k] -> [n]` into elementary operators, in the order they act on an
/// `n`-simplex `x` to produce `φ^* x`.
pub fn decompose(phi: &Monotone) -> Vec<Elementary> {
    let mut ops = Vec::new();
    // Mono part: delete missing points of the image, largest first.
    let mut image: Vec<usize> = phi.images.clone();
    image.dedup();
    let mut target = phi.target;
    let mut missing: Vec<usize> = (0..=target).filter(|p| !image.contains(p)).collect();
    while let Some(p) = missing.pop() {
        ops.push(Elementary::Face(p));
        for v in image.iter_mut() {
            if *v > p {
                *v -= 1;
            }
        }
        target -= 1;
    }
    let _ = target;
    // Epi part: ε = ε' ∘ σ^j with j the largest repeated position, applied last.
    let mut eps: Vec<usize> = Vec::with_capacity(phi.images.len());
    let mut rank = 0usize;
    for (idx, &v) in phi.images.iter().enumerate() {
        if idx > 0 && v != phi.images[idx - 1] {
            rank += 1;
        }
        eps.push(rank);
    }
    let mut degens = Vec::new();
    while let Some(j) = (0..eps.len().saturating_sub(1)).rev().find(|&j| eps[j] == eps[j + 1]) {
        degens.push(Elementary::Degeneracy(j));
        eps.remove(j + 1);
    }
    degens.reverse();
    ops.extend(degens);
    ops
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        for k in 0..4 {
            for n in 0..4 {
                assert_eq!(Monotone::all(k, n).len(), monotone_count(k, n));
            }
        }
    }

    #[test]
    fn coface_codegeneracy_relation() {
        for n in 0..4 {
            for i in 0..=n {
                let s = Monotone::codegeneracy(n, i);
                let d = Monotone::coface(n + 1, i);
                assert_eq!(s.compose(&d), Monotone::identity(n));
                let d2 = Monotone::coface(n + 1, i + 1);
                assert_eq!(s.compose(&d2), Monotone::identity(n));
            }
        }
    }

    // Rebuild φ from its decomposition by composing cofaces/codegeneracies.
    fn rebuild(phi: &Monotone) -> Monotone {
        let ops = decompose(phi);
        // φ^* = ops applied in order, so φ = op_1 ∘ op_2 ∘ ... as maps of ordinals
        let mut cur = Monotone::identity(phi.target);
        let mut dim = phi.target;
        for op in ops {
            match op {
                Elementary::Face(i) => {
                    cur = cur.compose(&Monotone::coface(dim, i));
                    dim -= 1;
                }
                Elementary::Degeneracy(i) => {
                    cur = cur.compose(&Monotone::codegeneracy(dim, i));
                    dim += 1;
                }
            }
        }
        cur
    }

    #[test]
    fn decomposition_rebuilds_every_map() {
        for k in 0..4 {
            for n in 0..4 {
                for phi in Monotone::all(k, n) {
                    assert_eq!(rebuild(&phi), phi, "{:?}", phi);
                }
            }
        }
    }
}
