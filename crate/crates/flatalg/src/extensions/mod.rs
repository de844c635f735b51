//! Extension constructions: central extensions and semidirect products of
//! pre-left Leibniz pairs, T*- and Pi(T*)-extensions of symmetric Leibniz
//! superalgebras, the four double-extension variants of flat
//! pseudo-Euclidean superalgebras, and the inverse deconstruction.
//!
//! Every builder validates its data against the construction's equation
//! system, transcribed literally and named line by line, and additionally
//! verifies the built object against ground truth (the relevant identity
//! check on the output). When a transcribed line fails on data whose output
//! nevertheless verifies, the line is flagged in the result's discrepancy
//! list instead of rejecting the construction.

mod central;
mod deconstruct;
mod double;
mod semidirect;
mod tstar;

pub use central::{central_extension, CentralExtension, CentralExtensionData};
pub use deconstruct::{deconstruct_double_extension, iterate_to_lie, Deconstruction};
pub use double::{double_extension, DoubleExtension, DoubleExtensionData, Variant};
pub use semidirect::{semidirect_product, AdmissibleTuple, Semidirect};
pub use tstar::{
    pi_t_star_extension, reduce_to_t_star, t_star_extension, CocycleTensor, Reduction,
    TStarExtension,
};

use crate::algebra::Counterexample;
use crate::scalar::Scalar;
use crate::space::{Parity, SuperSpace, Vector};

/// A named equation of a validation system together with the witness at
/// which it failed.
#[derive(Clone, Debug)]
pub struct EquationFailure {
    pub name: String,
    pub witness: String,
}

impl EquationFailure {
    pub fn describe(&self) -> String {
        format!("{} [witness {}]", self.name, self.witness)
    }
}

impl From<&Counterexample> for EquationFailure {
    fn from(cx: &Counterexample) -> Self {
        EquationFailure {
            name: cx.clause.clone().unwrap_or_else(|| "identity".into()),
            witness: cx.describe(),
        }
    }
}

/// Bookkeeping for a space extended by adjoined lines: indices of the old
/// basis inside the new space plus the indices of the new vectors.
#[derive(Clone, Debug)]
pub(crate) struct SpaceExtension {
    pub space: SuperSpace,
    pub core_to_ext: Vec<usize>,
    pub adjoined: Vec<usize>,
}

/// Builds `core (+) lines` with canonical ordering; each adjoined line gets
/// a fresh label derived from its stem.
pub(crate) fn extend_space(core: &SuperSpace, lines: &[(&str, Parity)]) -> SpaceExtension {
    let mut even: Vec<String> = Vec::new();
    let mut odd: Vec<String> = Vec::new();
    let mut names = Vec::new();
    for (stem, parity) in lines {
        let mut label = core.fresh_label(stem);
        while names.contains(&label) {
            label.push('\'');
        }
        names.push(label.clone());
        match parity {
            Parity::Even => even.push(label),
            Parity::Odd => odd.push(label),
        }
    }
    let adj_even = even.len();
    let mut even_labels: Vec<String> = core.labels()[..core.even_dim()].to_vec();
    even_labels.extend(even);
    let mut odd_labels: Vec<String> = core.labels()[core.even_dim()..].to_vec();
    odd_labels.extend(odd);
    let space = SuperSpace::new(even_labels, odd_labels).expect("fresh labels are unique");

    let core_to_ext: Vec<usize> = (0..core.dim())
        .map(|i| {
            if i < core.even_dim() {
                i
            } else {
                i + adj_even
            }
        })
        .collect();
    let mut adjoined = Vec::new();
    let mut seen_even = 0;
    let mut seen_odd = 0;
    for (_, parity) in lines {
        match parity {
            Parity::Even => {
                adjoined.push(core.even_dim() + seen_even);
                seen_even += 1;
            }
            Parity::Odd => {
                adjoined.push(core.even_dim() + adj_even + core.odd_dim() + seen_odd);
                seen_odd += 1;
            }
        }
    }
    SpaceExtension {
        space,
        core_to_ext,
        adjoined,
    }
}

impl SpaceExtension {
    /// Transports a core vector into the extended space.
    pub fn lift(&self, v: &Vector) -> Vector {
        let mut out = self.space.zero_vector();
        for (i, c) in v.iter() {
            out.set(self.core_to_ext[i], c.clone());
        }
        out
    }
}

pub(crate) fn scalar_is(name: &str, lhs: &Scalar, rhs: &Scalar, fails: &mut Vec<EquationFailure>) {
    if lhs != rhs {
        fails.push(EquationFailure {
            name: name.to_string(),
            witness: format!("lhs = {lhs}, rhs = {rhs}"),
        });
    }
}

pub(crate) fn vector_is(name: &str, lhs: &Vector, rhs: &Vector, fails: &mut Vec<EquationFailure>) {
    if lhs != rhs {
        fails.push(EquationFailure {
            name: name.to_string(),
            witness: format!("lhs = {lhs:?}, rhs = {rhs:?}"),
        });
    }
}
