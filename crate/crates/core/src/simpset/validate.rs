use serde::{Deserialize, Serialize};

use super::monotone::Monotone;
use super::sset::SimplicialSet;

/// A violated simplicial identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub level: usize,
    pub simplex: String,
    pub identity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub pass: bool,
    pub checked: usize,
    pub violation: Option<Violation>,
}

/// Abstract view of a (truncated) simplicial object, for reuse on rows and columns of
/// bisimplicial sets.
pub trait SimplicialView {
    fn top(&self) -> usize;
    fn count(&self, n: usize) -> usize;
    fn face(&self, n: usize, x: u32, i: usize) -> u32;
    fn degen(&self, n: usize, x: u32, i: usize) -> u32;
    fn label(&self, n: usize, x: u32) -> String;
}

impl SimplicialView for SimplicialSet {
    fn top(&self) -> usize {
        self.trunc_dim()
    }
    fn count(&self, n: usize) -> usize {
        SimplicialSet::count(self, n)
    }
    fn face(&self, n: usize, x: u32, i: usize) -> u32 {
        SimplicialSet::face(self, n, x, i)
    }
    fn degen(&self, n: usize, x: u32, i: usize) -> u32 {
        SimplicialSet::degen(self, n, x, i)
    }
    fn label(&self, n: usize, x: u32) -> String {
        self.id(n, x).to_string()
    }
}

/// Exhaustively check range validity, the simplicial identities, and injectivity of
/// degeneracies. Stops at the first violation.
pub fn check_view<V: SimplicialView + ?Sized>(v: &V) -> IdentityReport {
    let d = v.top();
    let mut checked = 0usize;
    let fail = |n: usize, x: u32, identity: String, checked: usize| IdentityReport {
        pass: false,
        checked,
        violation: Some(Violation { level: n, simplex: v.label(n, x), identity }),
    };
    for n in 0..=d {
        for x in 0..v.count(n) as u32 {
            if n >= 1 {
                for i in 0..=n {
                    checked += 1;
                    if v.face(n, x, i) as usize >= v.count(n - 1) {
                        return fail(n, x, format!("d_{} out of range", i), checked);
                    }
                }
            }
            if n < d {
                for i in 0..=n {
                    checked += 1;
                    if v.degen(n, x, i) as usize >= v.count(n + 1) {
                        return fail(n, x, format!("s_{} out of range", i), checked);
                    }
                }
            }
        }
    }
    for n in 0..=d {
        for x in 0..v.count(n) as u32 {
            // d_i d_j = d_{j-1} d_i, i < j
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        checked += 1;
                        let lhs = v.face(n - 1, v.face(n, x, j), i);
                        let rhs = v.face(n - 1, v.face(n, x, i), j - 1);
                        if lhs != rhs {
                            return fail(n, x, format!("d_{i} d_{j} = d_{} d_{i}", j - 1), checked);
                        }
                    }
                }
            }
            if n < d {
                for j in 0..=n {
                    let sx = v.degen(n, x, j);
                    for i in 0..=n + 1 {
                        checked += 1;
                        let lhs = v.face(n + 1, sx, i);
                        let (ok, name) = if i < j {
                            (n >= 1 && lhs == v.degen(n - 1, v.face(n, x, i), j - 1), format!("d_{i} s_{j} = s_{} d_{i}", j - 1))
                        } else if i == j || i == j + 1 {
                            (lhs == x, format!("d_{i} s_{j} = id"))
                        } else {
                            (n >= 1 && lhs == v.degen(n - 1, v.face(n, x, i - 1), j), format!("d_{i} s_{j} = s_{j} d_{}", i - 1))
                        };
                        if !ok {
                            return fail(n, x, name, checked);
                        }
                    }
                }
                if n + 1 < d {
                    for j in 0..=n {
                        for i in 0..=j {
                            checked += 1;
                            let lhs = v.degen(n + 1, v.degen(n, x, j), i);
                            let rhs = v.degen(n + 1, v.degen(n, x, i), j + 1);
                            if lhs != rhs {
                                return fail(n, x, format!("s_{i} s_{j} = s_{} s_{i}", j + 1), checked);
                            }
                        }
                    }
                }
            }
        }
        if n < d {
            for i in 0..=n {
                let mut seen = vec![false; v.count(n + 1)];
                for x in 0..v.count(n) as u32 {
                    checked += 1;
                    let s = v.degen(n, x, i) as usize;
                    if std::mem::replace(&mut seen[s], true) {
                        return fail(n, x, format!("s_{i} not injective"), checked);
                    }
                }
            }
        }
    }
    IdentityReport { pass: true, checked, violation: None }
}

pub fn validate_simplicial_identities(x: &SimplicialSet) -> IdentityReport {
    check_view(x)
}

/// Eilenberg–Zilber: every simplex is `ε^* y` for exactly one nondegenerate `y` and
/// surjection `ε`. Returns the number of simplices that fail to be hit exactly once.
pub fn eilenberg_zilber_defects(x: &SimplicialSet) -> usize {
    let d = x.trunc_dim();
    let mut hits: Vec<Vec<u32>> = (0..=d).map(|n| vec![0; x.count(n)]).collect();
    for k in 0..=d {
        for y in x.nondegenerate(k) {
            for n in k..=d {
                for eps in Monotone::surjections(n, k) {
                    hits[n][x.apply(k, y, &eps) as usize] += 1;
                }
            }
        }
    }
    hits.iter().flatten().filter(|&&h| h != 1).count()
}
