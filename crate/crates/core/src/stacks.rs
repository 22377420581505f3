//! Layer decomposition by cardinality and the stack-based classes.

use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog::ExminorClassId;
use crate::error::{Error, Result};
use crate::matroid::{is_quotient, Matroid};
use crate::minor_scan::{classify_by_exminors, Verdict};
use crate::setsystem::SetSystem;

/// The layers `N_k, …, N_ℓ` of a proper set system, one per cardinality.
/// Sizes with no feasible set keep an empty-family layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stack {
    pub k: usize,
    pub l: usize,
    pub layers: Vec<SetSystem>,
}

impl Stack {
    /// The layer holding the feasible sets of size `i`.
    pub fn layer(&self, i: usize) -> Option<&SetSystem> {
        i.checked_sub(self.k).and_then(|j| self.layers.get(j))
    }

    /// Sizes whose layer is proper.
    pub fn proper_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        (self.k..=self.l).filter(move |&i| self.layers[i - self.k].is_proper())
    }
}

pub fn stack_of(s: &SetSystem) -> Result<Stack> {
    let (k, l) = s.size_range().ok_or(Error::Improper)?;
    let layers = (k..=l)
        .map(|i| SetSystem::from_parts_unchecked(s.labels().to_vec(), s.layer(i)))
        .collect();
    Ok(Stack { k, l, layers })
}

/// Diagnosis of one proper layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerReport {
    pub size: usize,
    pub sets: usize,
    pub matroid: bool,
    pub paving: bool,
    pub sparse_paving: bool,
    /// Whether this layer is a quotient of the next proper layer up; `None`
    /// for the top layer or when either layer is not a matroid.
    pub quotient_of_next: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackClassification {
    pub matroid_stack: bool,
    pub paving: bool,
    pub sparse_paving: bool,
    pub quotient: bool,
    pub even: bool,
    pub delta_matroid: bool,
    /// Rank differences between consecutive proper layers. Reported only.
    pub rank_gaps: Vec<usize>,
    pub layers: Vec<LayerReport>,
}

impl StackClassification {
    /// Flag vector in a fixed order, for compact output.
    pub fn flags(&self) -> [(&'static str, bool); 6] {
        [
            ("matroid-stack", self.matroid_stack),
            ("paving", self.paving),
            ("sparse-paving", self.sparse_paving),
            ("quotient", self.quotient),
            ("even", self.even),
            ("delta-matroid", self.delta_matroid),
        ]
    }

    /// Whether every consecutive rank gap lies in `1..=2`.
    pub fn gaps_within_two(&self) -> bool {
        self.rank_gaps.iter().all(|&g| (1..=2).contains(&g))
    }
}

pub fn classify_stack(s: &SetSystem) -> Result<StackClassification> {
    let stack = stack_of(s)?;
    let sizes: Vec<usize> = stack.proper_sizes().collect();
    let matroids: Vec<Option<Matroid>> = sizes
        .iter()
        .map(|&i| Matroid::new(stack.layer(i).expect("in range").clone()).ok())
        .collect();
    let mut layers = Vec::with_capacity(sizes.len());
    for (j, (&size, m)) in sizes.iter().zip(&matroids).enumerate() {
        let (paving, sparse_paving) = m.as_ref().map_or((false, false), Matroid::paving_flags);
        let quotient_of_next = match (m, matroids.get(j + 1)) {
            (Some(q), Some(Some(l))) => Some(is_quotient(q, l)?),
            _ => None,
        };
        layers.push(LayerReport {
            size,
            sets: stack.layer(size).map_or(0, SetSystem::len),
            matroid: m.is_some(),
            paving,
            sparse_paving,
            quotient_of_next,
        });
    }
    let matroid_stack = layers.iter().all(|r| r.matroid);
    let quotient = matroid_stack && layers.iter().all(|r| r.quotient_of_next != Some(false));
    Ok(StackClassification {
        matroid_stack,
        paving: matroid_stack && layers.iter().all(|r| r.paving),
        sparse_paving: matroid_stack && layers.iter().all(|r| r.sparse_paving),
        quotient,
        even: s.is_even(),
        delta_matroid: s.is_delta_matroid(),
        rank_gaps: sizes.windows(2).map(|w| w[1] - w[0]).collect(),
        layers,
    })
}

fn is_stack_class(id: ExminorClassId) -> bool {
    use ExminorClassId::*;
    matches!(
        id,
        MatroidStack | EvenMatroidStack | Paving | SparsePaving | QuotientStack
    )
}

/// Membership in a stack class via its excluded minors, after checking the
/// class's ambient hypothesis.
pub fn stack_class_exminors(s: &SetSystem, id: ExminorClassId) -> Result<Verdict> {
    if !is_stack_class(id) {
        return Err(Error::Hypothesis(String::from("not a stack class")));
    }
    classify_by_exminors(s, id)
}

/// For an even sparse paving set system, whether it is a quotient set system.
pub fn check_speven(s: &SetSystem) -> Result<bool> {
    let c = classify_stack(s)?;
    if !(c.even && c.sparse_paving) {
        return Err(Error::Hypothesis(String::from(
            "not an even sparse paving set system",
        )));
    }
    Ok(c.quotient)
}
