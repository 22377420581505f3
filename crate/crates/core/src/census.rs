//! Exhaustive and sampled enumeration of proper set systems, checking each
//! excluded-minor theorem against its direct oracle.
//!
//! A family on `n` elements is identified by its index: bit `j` is set iff
//! the subset with mask `j` is feasible. Index ranges partition the work, so
//! reports from disjoint ranges merge into the report of their union.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::ExminorClassId;
use crate::error::{Error, Result};
use crate::gf2::BinaryOracle;
use crate::higgs::classify_higgs;
use crate::matroid::is_matroid;
use crate::minor_scan::{ExminorClassifier, MinorWitness, Verdict};
use crate::setsystem::SetSystem;
use crate::stacks::classify_stack;

/// Largest `n` enumerated exhaustively without an explicit long-run request.
pub const EXHAUSTIVE_MAX_N: usize = 4;
/// Largest `n` whose family index fits the index type.
pub const INDEX_MAX_N: usize = 7;
/// Discrepancies kept in full per report; all are counted.
pub const DISCREPANCY_LIMIT: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => f.write_str("exhaustive"),
            Mode::Sampled { seed, count } => write!(f, "sampled(seed={seed}, count={count})"),
        }
    }
}

/// One past the largest family index on `n` elements.
pub fn index_end(n: usize) -> Result<u128> {
    match n {
        0..=6 => Ok(1u128 << (1usize << n)),
        7 => Ok(u128::MAX),
        _ => Err(Error::CensusCapacity(n)),
    }
}

/// Number of proper systems on `n` elements, `2^(2^n) - 1`.
pub fn proper_count(n: usize) -> Result<u128> {
    match n {
        7 => Ok(u128::MAX),
        _ => index_end(n).map(|e| e - 1),
    }
}

/// The family index of sample `i` under `seed`: uniform over nonempty
/// families and independent of how samples are split across workers.
pub fn sample_index(n: usize, seed: u64, i: u64) -> Result<u128> {
    if n > INDEX_MAX_N {
        return Err(Error::CensusCapacity(n));
    }
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&i.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    let width = 1u32 << n;
    loop {
        let raw = (rng.next_u64() as u128) << 64 | rng.next_u64() as u128;
        let idx = if width >= 128 {
            raw
        } else {
            raw & ((1u128 << width) - 1)
        };
        if idx != 0 {
            return Ok(idx);
        }
    }
}

/// The family indices visited by `mode`, in order.
pub fn indices(n: usize, mode: Mode) -> Result<impl Iterator<Item = u128>> {
    let (range, sampled) = match mode {
        Mode::Exhaustive if n > EXHAUSTIVE_MAX_N => return Err(Error::CensusCapacity(n)),
        Mode::Exhaustive => (1..index_end(n)?, None),
        Mode::Sampled { seed, count } => {
            sample_index(n, seed, 0)?;
            (0..count as u128, Some(seed))
        }
    };
    Ok(range.map(move |i| match sampled {
        None => i,
        Some(seed) => sample_index(n, seed, i as u64).expect("n checked above"),
    }))
}

pub fn enumerate_proper_systems(n: usize, mode: Mode) -> Result<impl Iterator<Item = SetSystem>> {
    Ok(indices(n, mode)?.map(move |i| SetSystem::from_family_index(n, i).expect("index in range")))
}

/// The registered equivalences between a direct oracle and an
/// excluded-minor scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    ExDelta,
    ExEvenDelta,
    ExEvenDeltaAll,
    ExHiggs,
    ExFull,
    ExEven,
    ExMatroids,
    ExBinary,
    ExBinDelta,
    ExMatroidStack,
    ExMatroidStackEven,
    ExPaving,
    ExSparse,
    ExQuotientStack,
    SpEven,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::ExDelta,
        TheoremId::ExEvenDelta,
        TheoremId::ExEvenDeltaAll,
        TheoremId::ExHiggs,
        TheoremId::ExFull,
        TheoremId::ExEven,
        TheoremId::ExMatroids,
        TheoremId::ExBinary,
        TheoremId::ExBinDelta,
        TheoremId::ExMatroidStack,
        TheoremId::ExMatroidStackEven,
        TheoremId::ExPaving,
        TheoremId::ExSparse,
        TheoremId::ExQuotientStack,
        TheoremId::SpEven,
    ];

    pub fn as_str(self) -> &'static str {
        use TheoremId::*;
        match self {
            ExDelta => "exdelta",
            ExEvenDelta => "exevendelta",
            ExEvenDeltaAll => "exevendelta2",
            ExHiggs => "exhiggs",
            ExFull => "exfull",
            ExEven => "exeven",
            ExMatroids => "exmatroids",
            ExBinary => "exbinary",
            ExBinDelta => "exbindelta",
            ExMatroidStack => "exmatroidstack",
            ExMatroidStackEven => "exmatroidstackeven",
            ExPaving => "expaving",
            ExSparse => "exsparse",
            ExQuotientStack => "exquotientstack",
            SpEven => "speven",
        }
    }

    pub fn description(self) -> &'static str {
        use TheoremId::*;
        match self {
            ExDelta => "delta-matroid iff no minor in S or T",
            ExEvenDelta => "an even system is a delta-matroid iff no even excluded minor",
            ExEvenDeltaAll => "even delta-matroid iff no minor in {S1} with S and T567",
            ExHiggs => "a delta-matroid is a Higgs delta-matroid iff no minor in U1-U7",
            ExFull => "a delta-matroid is a full Higgs delta-matroid iff no minor in {U1, S2}",
            ExEven => "an even delta-matroid is an even Higgs delta-matroid iff no minor in U3-U7",
            ExMatroids => "an equicardinal system is a matroid iff no equicardinal excluded minor",
            ExBinary => "binary delta-matroid iff no minor in P, S or T",
            ExBinDelta => "a delta-matroid is binary iff no minor in P",
            ExMatroidStack => "a matroid stack system is a delta-matroid iff no listed minor",
            ExMatroidStackEven => {
                "an even matroid stack system is a delta-matroid iff no listed minor"
            }
            ExPaving => "a paving system is a delta-matroid iff no listed minor",
            ExSparse => "a sparse paving system is a delta-matroid iff no listed minor",
            ExQuotientStack => "a quotient system is a delta-matroid iff no listed minor",
            SpEven => "every even sparse paving system is a quotient system",
        }
    }

    /// The excluded-minor class scanned, if any.
    pub fn class(self) -> Option<ExminorClassId> {
        use ExminorClassId as C;
        use TheoremId::*;
        Some(match self {
            ExDelta => C::DeltaMatroid,
            ExEvenDelta => C::EvenDeltaWithinEven,
            ExEvenDeltaAll => C::EvenDeltaWithinAll,
            ExHiggs => C::HiggsLift,
            ExFull => C::FullHiggs,
            ExEven => C::EvenHiggsWithinEven,
            ExMatroids => C::MatroidEquicardinal,
            ExBinary | ExBinDelta => C::Binary,
            ExMatroidStack => C::MatroidStack,
            ExMatroidStackEven => C::EvenMatroidStack,
            ExPaving => C::Paving,
            ExSparse => C::SparsePaving,
            ExQuotientStack => C::QuotientStack,
            SpEven => return None,
        })
    }

    fn needs_oracle(self) -> bool {
        matches!(self, TheoremId::ExBinary | TheoremId::ExBinDelta)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// A direct verdict that disagrees with the excluded-minor verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub family_index: u128,
    pub theorem: TheoremId,
    pub direct: bool,
    pub exminor: bool,
    pub witness: Option<MinorWitness>,
}

/// Outcome of one system under one theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub direct: bool,
    pub exminor: bool,
    pub witness: Option<MinorWitness>,
}

/// Everything needed to check one theorem at one ground-set size.
#[derive(Clone, Debug)]
pub struct EquivalenceChecker {
    theorem: TheoremId,
    n: usize,
    classifier: Option<ExminorClassifier>,
    oracle: Option<BinaryOracle>,
}

impl EquivalenceChecker {
    pub fn new(theorem: TheoremId, n: usize) -> Result<Self> {
        if n > crate::MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        let oracle = if theorem.needs_oracle() {
            Some(BinaryOracle::new(n)?)
        } else {
            None
        };
        Ok(EquivalenceChecker {
            theorem,
            n,
            classifier: theorem.class().map(|c| ExminorClassifier::new(c, n)),
            oracle,
        })
    }

    pub fn theorem(&self) -> TheoremId {
        self.theorem
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `None` when the ambient hypothesis fails.
    pub fn check(&self, s: &SetSystem) -> Option<Outcome> {
        use TheoremId::*;
        let dm = || s.is_delta_matroid();
        let stack = || classify_stack(s).ok();
        let direct = match self.theorem {
            ExDelta => dm(),
            ExEvenDelta => {
                if !s.is_even() {
                    return None;
                }
                dm()
            }
            ExEvenDeltaAll => s.is_even() && dm(),
            ExHiggs | ExFull | ExEven | ExBinDelta => {
                if !dm() || (self.theorem == ExEven && !s.is_even()) {
                    return None;
                }
                match self.theorem {
                    ExBinDelta => self.oracle.as_ref().expect("built").is_binary(s),
                    _ => {
                        let c = classify_higgs(s).ok()?;
                        match self.theorem {
                            ExHiggs => c.is_higgs(),
                            ExFull => c.is_full(),
                            _ => c.is_even_higgs(),
                        }
                    }
                }
            }
            ExMatroids => {
                if !s.is_equicardinal() {
                    return None;
                }
                is_matroid(s)
            }
            ExBinary => dm() && self.oracle.as_ref().expect("built").is_binary(s),
            ExMatroidStack | ExMatroidStackEven | ExPaving | ExSparse | ExQuotientStack => {
                let c = stack()?;
                let ok = match self.theorem {
                    ExMatroidStack => c.matroid_stack,
                    ExMatroidStackEven => c.matroid_stack && c.even,
                    ExPaving => c.paving,
                    ExSparse => c.sparse_paving,
                    _ => c.quotient,
                };
                if !ok {
                    return None;
                }
                c.delta_matroid
            }
            SpEven => {
                let c = stack()?;
                if !(c.even && c.sparse_paving) {
                    return None;
                }
                return Some(Outcome {
                    direct: c.quotient,
                    exminor: true,
                    witness: None,
                });
            }
        };
        let verdict = self
            .classifier
            .as_ref()
            .expect("scan class")
            .classify_unchecked(s);
        let exminor = verdict.is_member();
        let witness = match verdict {
            Verdict::Excluded(w) => Some(w),
            Verdict::Member => None,
        };
        Some(Outcome {
            direct,
            exminor,
            witness,
        })
    }
}

/// Counts per class, each restricted to delta-matroids except `matroid`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub delta: u64,
    pub even_delta: u64,
    pub higgs: u64,
    pub full_higgs: u64,
    pub even_higgs: u64,
    pub matroid: u64,
    pub matroid_stack: u64,
    pub paving: u64,
    pub sparse_paving: u64,
    pub quotient: u64,
    pub binary: u64,
}

impl ClassCounts {
    fn add(&mut self, o: &ClassCounts) {
        self.delta += o.delta;
        self.even_delta += o.even_delta;
        self.higgs += o.higgs;
        self.full_higgs += o.full_higgs;
        self.even_higgs += o.even_higgs;
        self.matroid += o.matroid;
        self.matroid_stack += o.matroid_stack;
        self.paving += o.paving;
        self.sparse_paving += o.sparse_paving;
        self.quotient += o.quotient;
        self.binary += o.binary;
    }

    pub fn entries(&self) -> [(&'static str, u64); 11] {
        [
            ("delta-matroid", self.delta),
            ("even-delta-matroid", self.even_delta),
            ("higgs", self.higgs),
            ("full-higgs", self.full_higgs),
            ("even-higgs", self.even_higgs),
            ("matroid", self.matroid),
            ("matroid-stack", self.matroid_stack),
            ("paving", self.paving),
            ("sparse-paving", self.sparse_paving),
            ("quotient", self.quotient),
            ("binary", self.binary),
        ]
    }
}

/// A census result. `in_scope` counts systems meeting the theorem's
/// hypothesis and `members` those the direct oracle accepts. `counts` is
/// populated by [`count_census`] only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub theorem: Option<TheoremId>,
    pub systems: u64,
    pub in_scope: u64,
    pub members: u64,
    pub counts: ClassCounts,
    pub discrepancy_count: u64,
    pub discrepancies: Vec<Discrepancy>,
}

impl CensusReport {
    pub fn new(n: usize, theorem: Option<TheoremId>) -> Self {
        CensusReport {
            n,
            theorem,
            systems: 0,
            in_scope: 0,
            members: 0,
            counts: ClassCounts::default(),
            discrepancy_count: 0,
            discrepancies: Vec::new(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.discrepancy_count == 0
    }

    /// Associative and commutative on reports of disjoint work.
    pub fn merge(&mut self, other: CensusReport) {
        debug_assert_eq!((self.n, self.theorem), (other.n, other.theorem));
        self.systems += other.systems;
        self.in_scope += other.in_scope;
        self.members += other.members;
        self.counts.add(&other.counts);
        self.discrepancy_count += other.discrepancy_count;
        self.discrepancies.extend(other.discrepancies);
        self.discrepancies.sort_by_key(|d| d.family_index);
        self.discrepancies.truncate(DISCREPANCY_LIMIT);
    }

    fn record(&mut self, index: u128, theorem: TheoremId, o: Outcome) {
        self.in_scope += 1;
        self.members += o.direct as u64;
        if o.direct != o.exminor {
            self.discrepancy_count += 1;
            if self.discrepancies.len() < DISCREPANCY_LIMIT {
                self.discrepancies.push(Discrepancy {
                    family_index: index,
                    theorem,
                    direct: o.direct,
                    exminor: o.exminor,
                    witness: o.witness,
                });
            }
        }
    }

    /// The delta-matroid lower bound `d_n ≥ 2^(2^(n-1))`.
    pub fn lower_bound_holds(&self) -> bool {
        self.n == 0 || (self.counts.delta as u128) >= delta_lower_bound(self.n)
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        match self.theorem {
            Some(t) => format!(
                "{t} n={}: {} discrepancies / {} systems ({} in scope, {} members)",
                self.n, self.discrepancy_count, self.systems, self.in_scope, self.members
            ),
            None => format!(
                "census n={}: {} systems, {} delta-matroids",
                self.n, self.systems, self.counts.delta
            ),
        }
    }
}

/// `2^(2^(n-1))` for `n ≥ 1`, saturating.
pub fn delta_lower_bound(n: usize) -> u128 {
    match n {
        0 => 1,
        1..=7 => 1u128.checked_shl(1 << (n - 1)).unwrap_or(u128::MAX),
        _ => u128::MAX,
    }
}

fn verify_indices(checker: &EquivalenceChecker, it: impl Iterator<Item = u128>) -> CensusReport {
    let n = checker.n();
    let mut report = CensusReport::new(n, Some(checker.theorem()));
    for i in it {
        let s = SetSystem::from_family_index(n, i).expect("index in range");
        report.systems += 1;
        if let Some(o) = checker.check(&s) {
            report.record(i, checker.theorem(), o);
        }
    }
    report
}

/// Checks a theorem over an explicit index range, for partitioned runs.
pub fn verify_index_range(
    checker: &EquivalenceChecker,
    range: Range<u128>,
) -> Result<CensusReport> {
    let end = index_end(checker.n())?;
    if range.start == 0 || range.end > end {
        return Err(Error::InfeasibleParameters(format!(
            "index range must lie within 1..{end}"
        )));
    }
    Ok(verify_indices(checker, range))
}

/// Checks a theorem over sample numbers `range` of a seeded run.
pub fn verify_sample_range(
    checker: &EquivalenceChecker,
    seed: u64,
    range: Range<u64>,
) -> Result<CensusReport> {
    let n = checker.n();
    sample_index(n, seed, 0)?;
    Ok(verify_indices(
        checker,
        range.map(move |i| sample_index(n, seed, i).expect("n checked")),
    ))
}

/// Direct oracle versus excluded-minor scan over every system the mode visits.
pub fn verify_equivalence(n: usize, theorem: &str, mode: Mode) -> Result<CensusReport> {
    let theorem: TheoremId = theorem.parse()?;
    let it = indices(n, mode)?;
    let checker = EquivalenceChecker::new(theorem, n)?;
    Ok(verify_indices(&checker, it))
}

/// Counts per class over the visited systems.
pub fn count_indices(n: usize, it: impl Iterator<Item = u128>) -> Result<CensusReport> {
    let binary = ExminorClassifier::new(ExminorClassId::Binary, n);
    let mut report = CensusReport::new(n, None);
    for i in it {
        let s = SetSystem::from_family_index(n, i)?;
        report.systems += 1;
        let c = &mut report.counts;
        c.matroid += is_matroid(&s) as u64;
        if !s.is_delta_matroid() {
            continue;
        }
        c.delta += 1;
        c.even_delta += s.is_even() as u64;
        if let Ok(h) = classify_higgs(&s) {
            c.higgs += h.is_higgs() as u64;
            c.full_higgs += h.is_full() as u64;
            c.even_higgs += h.is_even_higgs() as u64;
        }
        let st = classify_stack(&s)?;
        c.matroid_stack += st.matroid_stack as u64;
        c.paving += st.paving as u64;
        c.sparse_paving += st.sparse_paving as u64;
        c.quotient += st.quotient as u64;
        c.binary += binary.classify_unchecked(&s).is_member() as u64;
    }
    Ok(report)
}

pub fn count_census(n: usize, mode: Mode) -> Result<CensusReport> {
    let report = count_indices(n, indices(n, mode)?)?;
    if mode == Mode::Exhaustive && !report.lower_bound_holds() {
        return Err(Error::Hypothesis(format!(
            "delta-matroid count below 2^(2^{})",
            n - 1
        )));
    }
    Ok(report)
}
