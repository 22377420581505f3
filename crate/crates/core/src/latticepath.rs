//! Regions bounded by two lattice paths and their lattice path delta-matroids.
//!
//! Coordinates are normalized so that `s_P = (0, 0)` and `s_Q = (-d, d)`.
//! Every start point lies on the antidiagonal `x + y = 0`, so the `k`-th step
//! of any path ends on `x + y = k` and carries label `k`. A region is stored
//! as its two step words; internally it becomes a band: at antidiagonal `k`
//! a path's `x` coordinate ranges over `q_k ..= p_k`, read off `Q` and `P`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bits;
use crate::error::{Error, Result};
use crate::higgs::{build_higgs_dm, HiggsIndexSet};
use crate::matroid::{is_quotient, Matroid};
use crate::setsystem::{Mask, SetSystem};

/// Default limit on the number of enumerated paths.
pub const DEFAULT_PATH_CAP: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    N,
    E,
}

impl Step {
    fn flip(self) -> Step {
        match self {
            Step::N => Step::E,
            Step::E => Step::N,
        }
    }
}

pub fn parse_word(word: &str) -> Result<Vec<Step>> {
    word.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'N' | 'n' => Ok(Step::N),
            'E' | 'e' => Ok(Step::E),
            other => Err(Error::InvalidRegion(format!("unexpected step `{other}`"))),
        })
        .collect()
}

pub fn word_string(steps: &[Step]) -> String {
    steps
        .iter()
        .map(|s| match s {
            Step::N => 'N',
            Step::E => 'E',
        })
        .collect()
}

/// Two lattice paths: `P` from `(0,0)` to `(u+c, v-c)` and `Q` from
/// `(-d, d)` to `(u, v)`, with `P` never above `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    pub d: usize,
    pub c: usize,
    pub u: usize,
    pub v: usize,
    pub p: Vec<Step>,
    pub q: Vec<Step>,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} c={} u={} v={} P={} Q={}",
            self.d,
            self.c,
            self.u,
            self.v,
            word_string(&self.p),
            word_string(&self.q)
        )
    }
}

fn count_e(steps: &[Step]) -> usize {
    steps.iter().filter(|&&s| s == Step::E).count()
}

/// Per-antidiagonal `x` bounds, `lo[k] ..= hi[k]` for `k = 0 ..= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Band {
    lo: Vec<i32>,
    hi: Vec<i32>,
}

impl Band {
    fn n(&self) -> usize {
        self.lo.len() - 1
    }
}

impl Region {
    pub fn new(d: usize, c: usize, u: usize, v: usize, p: &str, q: &str) -> Result<Region> {
        let r = Region {
            d,
            c,
            u,
            v,
            p: parse_word(p)?,
            q: parse_word(q)?,
        };
        validate_region(&r)?;
        Ok(r)
    }

    /// Number of elements `u + v`.
    pub fn n(&self) -> usize {
        self.u + self.v
    }

    fn band(&self) -> Band {
        let mut lo = Vec::with_capacity(self.n() + 1);
        let mut hi = Vec::with_capacity(self.n() + 1);
        let (mut x_p, mut x_q) = (0i32, -(self.d as i32));
        lo.push(x_q);
        hi.push(x_p);
        for (sp, sq) in self.p.iter().zip(&self.q) {
            x_p += (*sp == Step::E) as i32;
            x_q += (*sq == Step::E) as i32;
            lo.push(x_q);
            hi.push(x_p);
        }
        Band { lo, hi }
    }

    /// Point `s_i = (-i, i)`, `0 ≤ i ≤ d`.
    pub fn start_point(&self, i: usize) -> (i64, i64) {
        (-(i as i64), i as i64)
    }

    /// Point `t_j = (u+c-j, v-c+j)`, `0 ≤ j ≤ c`.
    pub fn end_point(&self, j: usize) -> (i64, i64) {
        let (u, v, c) = (self.u as i64, self.v as i64, self.c as i64);
        (u + c - j as i64, v - c + j as i64)
    }

    /// Labels `1, …, u+v` as strings.
    pub fn labels(&self) -> Vec<String> {
        (1..=self.n()).map(|i| i.to_string()).collect()
    }
}

/// Checks every structural constraint, naming the first one violated.
pub fn validate_region(r: &Region) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidRegion(m));
    let n = r.n();
    if n > crate::MAX_ELEMENTS {
        return Err(Error::TooManyElements(n));
    }
    if r.v < r.c || r.v - r.c < r.d {
        return bad(format!(
            "need v - c >= d, got v={}, c={}, d={}",
            r.v, r.c, r.d
        ));
    }
    if r.p.len() != n {
        return bad(format!("P has {} steps, expected u + v = {n}", r.p.len()));
    }
    if r.q.len() != n {
        return bad(format!("Q has {} steps, expected u + v = {n}", r.q.len()));
    }
    if count_e(&r.p) != r.u + r.c {
        return bad(format!(
            "P must end at t_P = ({}, {}), but has {} east steps",
            r.u + r.c,
            r.v - r.c,
            count_e(&r.p)
        ));
    }
    if count_e(&r.q) != r.u + r.d {
        return bad(format!(
            "Q must end at t_Q = ({}, {}), but has {} east steps",
            r.u,
            r.v,
            count_e(&r.q)
        ));
    }
    let band = r.band();
    if let Some(k) = (0..=n).find(|&k| band.lo[k] > band.hi[k]) {
        return bad(format!("P rises above Q on antidiagonal {k}"));
    }
    Ok(())
}

pub fn is_valid_region(r: &Region) -> bool {
    validate_region(r).is_ok()
}

/// A path from `s_start` to `t_end` inside a region.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePath {
    pub start: usize,
    pub end: usize,
    pub steps: Vec<Step>,
}

impl LatticePath {
    /// Labels of the north steps, as a mask over labels `1..=n` (bit `k-1`).
    pub fn b(&self) -> Mask {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Step::N)
            .fold(0, |m, (k, _)| m | 1 << k)
    }
}

/// Every path in the region from any `s_i` to any `t_j`, each once.
pub fn enumerate_paths(r: &Region) -> Result<Vec<LatticePath>> {
    enumerate_paths_with_cap(r, DEFAULT_PATH_CAP)
}

pub fn enumerate_paths_with_cap(r: &Region, cap: usize) -> Result<Vec<LatticePath>> {
    validate_region(r)?;
    let band = r.band();
    let n = band.n();
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(n);
    for x0 in (band.lo[0]..=band.hi[0]).rev() {
        walk(&band, 0, x0, x0, &mut steps, &mut out, cap, r)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    band: &Band,
    k: usize,
    x: i32,
    x0: i32,
    steps: &mut Vec<Step>,
    out: &mut Vec<LatticePath>,
    cap: usize,
    r: &Region,
) -> Result<()> {
    if k == band.n() {
        if out.len() >= cap {
            return Err(Error::PathCap(cap));
        }
        out.push(LatticePath {
            start: (-x0) as usize,
            end: (r.u as i32 + r.c as i32 - x) as usize,
            steps: steps.clone(),
        });
        return Ok(());
    }
    for (step, nx) in [(Step::N, x), (Step::E, x + 1)] {
        if band.lo[k + 1] <= nx && nx <= band.hi[k + 1] {
            steps.push(step);
            walk(band, k + 1, nx, x0, steps, out, cap, r)?;
            steps.pop();
        }
    }
    Ok(())
}

/// The lattice path delta-matroid with its minimal and maximal matroids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lpdm {
    pub system: SetSystem,
    pub min: Matroid,
    pub max: Matroid,
}

/// Builds `(D, M(R_min), M(R_max))` and verifies that the first matroid is a
/// quotient of the second with `D` its full Higgs lift delta-matroid.
pub fn lpdm(r: &Region) -> Result<Lpdm> {
    let paths = enumerate_paths(r)?;
    let labels = r.labels();
    let all: Vec<Mask> = paths.iter().map(LatticePath::b).collect();
    let pick = |start: usize, end: usize| -> Vec<Mask> {
        paths
            .iter()
            .filter(|p| p.start == start && p.end == end)
            .map(LatticePath::b)
            .collect()
    };
    let structure = |m: &str| Error::LatticeStructure(m.to_string());
    let min_sets = pick(r.d, 0);
    let max_sets = pick(0, r.c);
    if min_sets.is_empty() || max_sets.is_empty() {
        return Err(structure("no path between the extreme corners"));
    }
    let system = SetSystem::new(labels.clone(), all)?;
    let min = Matroid::new(SetSystem::new(labels.clone(), min_sets)?)
        .map_err(|_| structure("paths from s_Q to t_P do not form matroid bases"))?;
    let max = Matroid::new(SetSystem::new(labels, max_sets)?)
        .map_err(|_| structure("paths from s_P to t_Q do not form matroid bases"))?;
    if !is_quotient(&min, &max)? {
        return Err(structure("M(R_min) is not a quotient of M(R_max)"));
    }
    let full = build_higgs_dm(&min, &max, &HiggsIndexSet::full(max.rank() - min.rank()))?;
    if full != system {
        return Err(structure(
            "path image differs from the full Higgs lift delta-matroid",
        ));
    }
    Ok(Lpdm { system, min, max })
}

/// Reflection in the line `y = x`: `b` becomes its complement, so the new
/// region's delta-matroid is exactly the dual, with the same labels.
pub fn region_dual(r: &Region) -> Result<Region> {
    validate_region(r)?;
    let flip = |w: &[Step]| w.iter().map(|s| s.flip()).collect::<Vec<_>>();
    Ok(Region {
        d: r.d,
        c: r.c,
        u: r.v - r.c - r.d,
        v: r.u + r.c + r.d,
        p: flip(&r.q),
        q: flip(&r.p),
    })
}

/// Reflection in the line `y = -x`: start and end swap, so `d` and `c`
/// exchange roles. The delta-matroid is the dual relabeled by `k ↦ n+1-k`.
pub fn region_dual_reversed(r: &Region) -> Result<Region> {
    validate_region(r)?;
    let rev = |w: &[Step]| w.iter().rev().map(|s| s.flip()).collect::<Vec<_>>();
    Ok(Region {
        d: r.c,
        c: r.d,
        u: r.v - r.c - r.d,
        v: r.u + r.c + r.d,
        p: rev(&r.p),
        q: rev(&r.q),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinorOp {
    Delete,
    Contract,
}

fn prune(lo: &mut [i32], hi: &mut [i32]) {
    let n = lo.len() - 1;
    for k in 1..=n {
        lo[k] = lo[k].max(lo[k - 1]);
        hi[k] = hi[k].min(hi[k - 1] + 1);
    }
    for k in (0..n).rev() {
        lo[k] = lo[k].max(lo[k + 1] - 1);
        hi[k] = hi[k].min(hi[k + 1]);
    }
}

/// Rebuilds a region from per-antidiagonal bounds with the same set of step
/// words, pruning cells that no path can reach.
fn region_from_bounds(mut lo: Vec<i32>, mut hi: Vec<i32>) -> Result<Region> {
    let n = lo.len() - 1;
    prune(&mut lo, &mut hi);
    if (0..=n).any(|k| lo[k] > hi[k]) {
        return Err(Error::LatticeStructure("minor leaves no path".into()));
    }
    // The realization of each word with the largest start already ends at or
    // beyond hi[0] and starts at or beyond hi[n] - n, so these clamps keep
    // every word while restoring u >= 0 and v - c >= d.
    lo[n] = lo[n].max(hi[0]);
    lo[0] = lo[0].max(hi[n] - n as i32);
    prune(&mut lo, &mut hi);
    let word = |xs: &[i32]| {
        xs.windows(2)
            .map(|w| if w[1] > w[0] { Step::E } else { Step::N })
            .collect::<Vec<_>>()
    };
    let shift = hi[0];
    let d = (hi[0] - lo[0]) as usize;
    let c = (hi[n] - lo[n]) as usize;
    let u = (lo[n] - shift) as usize;
    let r = Region {
        d,
        c,
        u,
        v: n - u,
        p: word(&hi),
        q: word(&lo),
    };
    validate_region(&r)?;
    Ok(r)
}

/// Paths whose step `e` goes east, with that step erased.
fn delete_step(r: &Region, e: usize) -> Result<Region> {
    let band = r.band();
    let n = band.n();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for k in 0..n {
        if k + 1 < e {
            lo.push(band.lo[k]);
            hi.push(band.hi[k]);
        } else if k + 1 == e {
            lo.push(band.lo[k].max(band.lo[k + 1] - 1));
            hi.push(band.hi[k].min(band.hi[k + 1] - 1));
        } else {
            lo.push(band.lo[k + 1] - 1);
            hi.push(band.hi[k + 1] - 1);
        }
    }
    region_from_bounds(lo, hi)
}

/// Region of the minor by label `e` (1-based), with labels above `e`
/// shifted down by one. Deleting a coloop contracts it and contracting a
/// loop deletes it, matching the set-system conventions.
pub fn region_minor(r: &Region, e: usize, op: MinorOp) -> Result<Region> {
    validate_region(r)?;
    if e == 0 || e > r.n() {
        return Err(Error::UnknownElement(e.to_string()));
    }
    let band = r.band();
    // step e can go north iff some x has x and x in both bands
    let can_north = band.lo[e].max(band.lo[e - 1]) <= band.hi[e].min(band.hi[e - 1]);
    let can_east = band.lo[e].max(band.lo[e - 1] + 1) <= band.hi[e].min(band.hi[e - 1] + 1);
    let delete = match op {
        MinorOp::Delete => can_east,
        MinorOp::Contract => !can_north,
    };
    if delete {
        delete_step(r, e)
    } else {
        let dual = region_dual(r)?;
        region_dual(&delete_step(&dual, e)?)
    }
}

/// Every valid region with `u + v = n`.
pub fn regions_of_size(n: usize) -> Vec<Region> {
    let mut out = Vec::new();
    for u in 0..=n {
        let v = n - u;
        for c in 0..=v {
            for d in 0..=(v - c) {
                let pw = words(n, u + c);
                let qw = words(n, u + d);
                for p in &pw {
                    for q in &qw {
                        let r = Region {
                            d,
                            c,
                            u,
                            v,
                            p: p.clone(),
                            q: q.clone(),
                        };
                        if is_valid_region(&r) {
                            out.push(r);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Words of length `n` with `e` east steps.
fn words(n: usize, e: usize) -> Vec<Vec<Step>> {
    bits::masks_of_size(n, e)
        .map(|m| {
            (0..n)
                .map(|k| if m >> k & 1 == 1 { Step::E } else { Step::N })
                .collect()
        })
        .collect()
}
