use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::fiber::{left_fiber, LeftFiber};
use crate::error::{Error, Result};
use crate::report::Clause;
use crate::sdot::{arrows, e_category, object_simplicial_set, CofSeq, ECat, GapGrid, ObjectSet};
use crate::simpset::{Monotone, SimplicialMap};
use crate::waldcat::{mediate, SubWaldhausen, WaldhausenInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Modern,
    Classical,
}

/// `𝔰•E(A, C, B)` with `𝔰(s)`, `𝔰(q)` and the targets `𝔰•A`, `𝔰•B`, truncated at `depth`.
#[derive(Debug)]
pub struct AdditivityContext {
    pub e: ECat,
    pub depth: usize,
    pub se: ObjectSet,
    pub sa: ObjectSet,
    pub sb: ObjectSet,
    /// `𝔰(s)`
    pub f: SimplicialMap,
    /// `𝔰(q)`
    pub g: SimplicialMap,
}

fn grid_map(src: &ObjectSet, tgt: &ObjectSet, functor: &crate::catkit::FunctorData) -> Result<SimplicialMap> {
    let assignment = src
        .grids
        .iter()
        .map(|lv| {
            lv.iter()
                .map(|x| {
                    let img = GapGrid {
                        n: x.n,
                        objects: x.objects.iter().map(|&o| functor.object(o)).collect(),
                        maps: x.maps.iter().map(|&m| functor.morphism(m)).collect(),
                    };
                    tgt.find(&img).ok_or_else(|| Error::Certification("image of a grid is not a grid".into()))
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(src.set.clone(), tgt.set.clone(), assignment)
}

impl AdditivityContext {
    pub fn new(a: &SubWaldhausen, c: &Arc<WaldhausenInstance>, b: &SubWaldhausen, depth: usize, budget: usize) -> Result<Self> {
        let e = e_category(a, c, b, budget)?;
        let se = object_simplicial_set(&e.instance, depth, budget)?;
        let sa = object_simplicial_set(&a.instance, depth, budget)?;
        let sb = object_simplicial_set(&b.instance, depth, budget)?;
        let f = grid_map(&se, &sa, &e.s)?;
        let g = grid_map(&se, &sb, &e.q)?;
        Ok(AdditivityContext { e, depth, se, sa, sb, f, g })
    }
}

/// One left fiber `𝔰(s)/(m, A')` with `r`, `ι` and the homotopy tables.
#[derive(Debug)]
pub struct AdditivityFiber {
    pub ctx: Arc<AdditivityContext>,
    pub fiber: LeftFiber,
    pub r: SimplicialMap,
    pub iota: SimplicialMap,
    /// `h[n][j][e]` for `0 ≤ j ≤ n+1`; `Err` records a simplex that left the fiber.
    pub h: Vec<Vec<Vec<std::result::Result<u32, String>>>>,
    /// The instance whose chooser supplies the pushouts `C_k ∪ A'`.
    pushouts: Arc<WaldhausenInstance>,
}

impl AdditivityFiber {
    pub fn new(ctx: &Arc<AdditivityContext>, m: usize, y: u32) -> Result<Self> {
        Self::build(ctx, m, y, ctx.e.data.c.clone(), true)
    }

    /// Same fiber, with the deformation pushouts taken from `pushouts` (same category as
    /// the middle instance) and computed in a fixed sequential order, for stateful choosers.
    pub fn with_pushouts(ctx: &Arc<AdditivityContext>, m: usize, y: u32, pushouts: Arc<WaldhausenInstance>) -> Result<Self> {
        if pushouts.category != ctx.e.data.c.category {
            return Err(Error::InvalidArgument("pushout instance has a different category".into()));
        }
        Self::build(ctx, m, y, pushouts, false)
    }

    fn build(ctx: &Arc<AdditivityContext>, m: usize, y: u32, pushouts: Arc<WaldhausenInstance>, parallel: bool) -> Result<Self> {
        let fiber = left_fiber(&ctx.f, m, y)?;
        let r = fiber.projection.then(&ctx.g)?;
        let mut out = AdditivityFiber { ctx: ctx.clone(), fiber, r: r.clone(), iota: r, h: Vec::new(), pushouts };
        out.iota = out.build_iota()?;
        let h = (0..=ctx.depth)
            .map(|n| {
                (0..=n + 1)
                    .map(|j| {
                        let count = out.fiber.set.count(n) as u32;
                        if parallel {
                            (0..count).into_par_iter().map(|e| out.homotopy(n, j, e)).collect()
                        } else {
                            (0..count).map(|e| out.homotopy(n, j, e)).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        out.h = h;
        Ok(out)
    }

    fn y_grid(&self) -> &GapGrid {
        &self.ctx.sa.grids[self.fiber.m][self.fiber.y as usize]
    }

    fn lookup(&self, grid: &GapGrid, alpha: &Monotone) -> Option<u32> {
        let x = self.ctx.se.find(grid)?;
        self.fiber.find(grid.n, x, alpha)
    }

    /// `ι(B)`: `* >-> B ->> B` in every cell, over the constant map at `m`.
    fn iota_grid(&self, z: &GapGrid) -> Option<GapGrid> {
        let d = &self.ctx.e.data;
        let (sa, c, sb) = (&d.a, &d.c, &d.b);
        let cc = c.cat();
        let za = sa.instance.zero;
        let objects = z
            .objects
            .iter()
            .map(|&o| {
                let xo = sb.include_object(o);
                d.find_object(&CofSeq { a: za, c: xo, b: o, i: c.from_zero(xo), p: cc.identity(xo) })
            })
            .collect::<Option<Vec<u32>>>()?;
        let ar = arrows(z.n);
        let maps = (0..ar.cat.morphism_count() as u32)
            .map(|g| {
                let (p, q) = (ar.cat.source(g) as usize, ar.cat.target(g) as usize);
                let bm = z.maps[g as usize];
                d.find_morphism(objects[p], objects[q], (sa.instance.cat().identity(za), sb.include_morphism(bm), bm))
            })
            .collect::<Option<Vec<u32>>>()?;
        Some(GapGrid { n: z.n, objects, maps })
    }

    fn build_iota(&self) -> Result<SimplicialMap> {
        let m = self.fiber.m;
        let assignment = self
            .ctx
            .sb
            .grids
            .iter()
            .enumerate()
            .map(|(n, lv)| {
                lv.iter()
                    .map(|z| {
                        self.iota_grid(z)
                            .and_then(|g| self.lookup(&g, &Monotone::constant(n, m, m)))
                            .ok_or_else(|| Error::Certification(format!("ι({}) is not in the fiber", z.label())))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(self.ctx.sb.set.clone(), self.fiber.set.clone(), assignment)
    }

    /// The diagram `h_n^j(e)`: columns before `j` kept, the rest pushed out along
    /// `A_t -> A'_{α(s), m}`, bottom row unchanged, over `α'` equal to `α` before `j`
    /// and constant `m` from `j` on.
    pub fn deform(&self, x: &GapGrid, alpha: &Monotone, j: usize) -> std::result::Result<(GapGrid, Monotone), String> {
        let d = &self.ctx.e.data;
        let (sa, c, sb) = (&d.a, &d.c, &d.b);
        let cc = c.cat();
        let (n, m) = (x.n, self.fiber.m);
        let ar = arrows(n);
        let alpha2 = Monotone::new((0..=n).map(|k| if k < j { alpha.at(k) } else { m }).collect(), m).expect("monotone");
        let y = self.y_grid();
        let top = y.reindex(&alpha2);
        // per cell: E-object, φ : C -> X and ψ : A* -> X
        let mut cells = Vec::with_capacity(ar.object_count());
        for (p, &(s, t)) in ar.pairs.iter().enumerate() {
            let e = *d.object(x.objects[p]);
            let astar = top.objects[p];
            let cell = if t < j {
                (x.objects[p], cc.identity(e.c), e.i, e.c)
            } else if alpha2.at(s) == m {
                let xo = sb.include_object(e.b);
                let seq = CofSeq { a: astar, c: xo, b: e.b, i: c.from_zero(xo), p: cc.identity(xo) };
                let obj = d.find_object(&seq).ok_or_else(|| format!("cell {},{}: * >-> B ->> B missing", s, t))?;
                (obj, e.p, c.from_zero(xo), xo)
            } else {
                let leg = sa.include_morphism(y.map((alpha.at(s), alpha.at(t)), (alpha.at(s), m)));
                let po = self.pushouts.pushout(leg, e.i).map_err(|er| er.to_string())?.ok_or_else(|| format!("cell {},{}: pushout leaves the bound", s, t))?;
                let bo = sb.include_object(e.b);
                let q = mediate(cc, po.object, bo, &[(po.from_c, e.p), (po.from_b, c.zero_map(sa.include_object(astar), bo))])
                    .ok_or_else(|| format!("cell {},{}: no induced quotient map", s, t))?;
                let seq = CofSeq { a: astar, c: po.object, b: e.b, i: po.from_b, p: q };
                let obj = d.find_object(&seq).ok_or_else(|| format!("cell {},{}: not a cofiber sequence", s, t))?;
                (obj, po.from_c, po.from_b, po.object)
            };
            cells.push(cell);
        }
        let mut maps = Vec::with_capacity(ar.cat.morphism_count());
        for g in 0..ar.cat.morphism_count() as u32 {
            let (p, q) = (ar.cat.source(g) as usize, ar.cat.target(g) as usize);
            let (_, cm, bm) = d.triples[x.maps[g as usize] as usize];
            let am = top.maps[g as usize];
            let (op, phi_p, psi_p, xp) = cells[p];
            let (oq, phi_q, psi_q, xq) = cells[q];
            let u = mediate(cc, xp, xq, &[(phi_p, cc.compose(phi_q, cm)), (psi_p, cc.compose(psi_q, sa.include_morphism(am)))])
                .ok_or_else(|| format!("no induced map along {}", ar.cat.morphism_name(g)))?;
            maps.push(d.find_morphism(op, oq, (am, u, bm)).ok_or_else(|| format!("map along {} is not a map of sequences", ar.cat.morphism_name(g)))?);
        }
        Ok((GapGrid { n, objects: cells.iter().map(|c| c.0).collect(), maps }, alpha2))
    }

    fn homotopy(&self, n: usize, j: usize, e: u32) -> std::result::Result<u32, String> {
        let x = &self.ctx.se.grids[n][self.fiber.source_simplex(n, e) as usize];
        let (grid, alpha) = self.deform(x, self.fiber.alpha(n, e), j)?;
        self.lookup(&grid, &alpha).ok_or_else(|| format!("h^{}_{}({}) is not a certified simplex of the fiber", j, n, self.fiber.set.id(n, e)))
    }

    /// `h^j_n(e)` in the modern formulation.
    pub fn h(&self, n: usize, j: usize, e: u32) -> Option<u32> {
        self.h[n][j][e as usize].as_ref().ok().copied()
    }

    /// `h_j(e) = h^{j+1}_{n+1}(s_j e)` in the classical formulation, `e` at level `n`.
    pub fn h_classical(&self, n: usize, j: usize, e: u32) -> Option<u32> {
        self.h(n + 1, j + 1, self.fiber.set.degen(n, e, j))
    }

    pub fn iota_r(&self, n: usize, e: u32) -> u32 {
        self.iota.at(n, self.r.at(n, e))
    }
}

/// Totals and itemized clauses for one formulation on one fiber.
#[derive(Clone, Debug, Serialize)]
pub struct HomotopyCertificate {
    pub formulation: Formulation,
    pub n_max: usize,
    pub checked: usize,
    pub failed: usize,
    pub clauses: Vec<Clause>,
}

impl HomotopyCertificate {
    pub fn pass(&self) -> bool {
        self.failed == 0
    }

    fn from_clauses(formulation: Formulation, n_max: usize, clauses: Vec<Clause>, failed: usize) -> Self {
        let checked = clauses.iter().map(|c| c.checked).sum();
        HomotopyCertificate { formulation, n_max, checked, failed, clauses }
    }
}

struct Tally {
    clauses: Vec<Clause>,
    failed: usize,
}

impl Tally {
    fn new(names: &[&str]) -> Self {
        Tally { clauses: names.iter().map(|&n| Clause::new(n)).collect(), failed: 0 }
    }

    fn check(&mut self, k: usize, lhs: Option<u32>, rhs: Option<u32>, what: impl FnOnce() -> String) {
        let ok = lhs.is_some() && lhs == rhs;
        if !ok {
            self.failed += 1;
        }
        self.clauses[k].check(ok, what);
    }
}

/// Every identity of the chosen formulation on every simplex of level `≤ n_max` whose
/// terms fit in the truncation.
pub fn verify_homotopy_identities(fib: &AdditivityFiber, formulation: Formulation, n_max: usize) -> HomotopyCertificate {
    let x = &fib.fiber.set;
    let depth = fib.ctx.depth;
    let n_max = n_max.min(depth);
    let face = |n: usize, e: Option<u32>, i: usize| e.map(|e| x.face(n, e, i));
    let degen = |n: usize, e: Option<u32>, i: usize| e.map(|e| x.degen(n, e, i));
    match formulation {
        Formulation::Modern => {
            let mut t = Tally::new(&[
                "closure",
                "h0_is_iota_r",
                "top_is_identity",
                "d0_j0",
                "d0_j1",
                "d0_j2_to_n",
                "d0_j_last",
                "di_below",
                "di_above",
                "si_below",
                "si_above",
            ]);
            for n in 0..=n_max {
                for e in 0..x.count(n) as u32 {
                    let id = || x.id(n, e).to_string();
                    for j in 0..=n + 1 {
                        if let Err(w) = &fib.h[n][j][e as usize] {
                            t.check(0, None, None, || w.clone());
                        }
                    }
                    t.check(1, fib.h(n, 0, e), Some(fib.iota_r(n, e)), id);
                    t.check(2, fib.h(n, n + 1, e), Some(e), id);
                    if n >= 1 {
                        let d0e = Some(x.face(n, e, 0));
                        for j in 0..=n + 1 {
                            let lhs = face(n, fib.h(n, j, e), 0);
                            let rhs = d0e.and_then(|d| fib.h(n - 1, j.saturating_sub(1), d));
                            let k = match j {
                                0 => 3,
                                1 => 4,
                                _ if j <= n => 5,
                                _ => 6,
                            };
                            t.check(k, lhs, rhs, || format!("j={} e={}", j, id()));
                        }
                        for i in 1..=n {
                            let die = x.face(n, e, i);
                            for j in 0..=n + 1 {
                                let lhs = face(n, fib.h(n, j, e), i);
                                if i < j {
                                    t.check(7, lhs, fib.h(n - 1, j - 1, die), || format!("i={} j={} e={}", i, j, id()));
                                } else {
                                    t.check(8, lhs, fib.h(n - 1, j, die), || format!("i={} j={} e={}", i, j, id()));
                                }
                            }
                        }
                    }
                    if n < depth {
                        for i in 0..=n {
                            let sie = x.degen(n, e, i);
                            for j in 0..=n + 1 {
                                let lhs = degen(n, fib.h(n, j, e), i);
                                if i < j {
                                    t.check(9, lhs, fib.h(n + 1, j + 1, sie), || format!("i={} j={} e={}", i, j, id()));
                                } else {
                                    t.check(10, lhs, fib.h(n + 1, j, sie), || format!("i={} j={} e={}", i, j, id()));
                                }
                            }
                        }
                    }
                }
            }
            HomotopyCertificate::from_clauses(formulation, n_max, t.clauses, t.failed)
        }
        Formulation::Classical => {
            let mut t = Tally::new(&[
                "closure",
                "d0_h0_is_iota_r",
                "d_last_h_last_is_identity",
                "di_hj_below",
                "dj_hj",
                "di_hj_above",
                "si_hj_below",
                "si_hj_above",
            ]);
            let hc = |n: usize, j: usize, e: u32| if n < depth { fib.h_classical(n, j, e) } else { None };
            for n in 0..=n_max.min(depth - 1) {
                for e in 0..x.count(n) as u32 {
                    let id = || x.id(n, e).to_string();
                    for j in 0..=n {
                        if hc(n, j, e).is_none() {
                            t.check(0, None, None, || format!("h_{}({})", j, id()));
                        }
                    }
                    t.check(1, face(n + 1, hc(n, 0, e), 0), Some(fib.iota_r(n, e)), id);
                    t.check(2, face(n + 1, hc(n, n, e), n + 1), Some(e), id);
                    for j in 0..=n {
                        let hj = hc(n, j, e);
                        for i in 0..=n + 1 {
                            let lhs = face(n + 1, hj, i);
                            if i < j {
                                let rhs = hc(n - 1, j - 1, x.face(n, e, i));
                                t.check(3, lhs, rhs, || format!("i={} j={} e={}", i, j, id()));
                            } else if i == j && j > 0 {
                                t.check(4, lhs, face(n + 1, hc(n, j - 1, e), j), || format!("j={} e={}", j, id()));
                            } else if i > j + 1 {
                                let rhs = hc(n - 1, j, x.face(n, e, i - 1));
                                t.check(5, lhs, rhs, || format!("i={} j={} e={}", i, j, id()));
                            }
                        }
                        if n + 2 <= depth {
                            for i in 0..=n + 1 {
                                let lhs = degen(n + 1, hj, i);
                                if i <= j {
                                    t.check(6, lhs, hc(n + 1, j + 1, x.degen(n, e, i)), || format!("i={} j={} e={}", i, j, id()));
                                } else {
                                    t.check(7, lhs, hc(n + 1, j, x.degen(n, e, i - 1)), || format!("i={} j={} e={}", i, j, id()));
                                }
                            }
                        }
                    }
                }
            }
            HomotopyCertificate::from_clauses(formulation, n_max, t.clauses, t.failed)
        }
    }
}
