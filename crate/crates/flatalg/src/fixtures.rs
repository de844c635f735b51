//! Worked examples shipped with the crate.
//!
//! These are the fixtures the CLI exposes under `--fixtures` and the test
//! suites build on. The quadratic families carry their Lie bracket and the
//! symmetric product `mu` separately, together with the product table as it
//! was originally published; the published tables of two of the families
//! contain transcription slips, and tooling diff them against the
//! reconstruction instead of trusting either silently.

use crate::algebra::{ProductTensor, SuperAlgebra};
use crate::bilinear::{build_form, BilinearForm};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::{Parity, SuperSpace};

/// An algebra together with a pseudo-Euclidean form.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub algebra: SuperAlgebra,
    pub form: BilinearForm,
}

/// A 2-step nilpotent quadratic fixture with its generating data.
#[derive(Clone, Debug)]
pub struct QuadraticFixture {
    pub name: &'static str,
    /// Product reconstructed as `bracket + mu`.
    pub algebra: SuperAlgebra,
    pub form: BilinearForm,
    /// The underlying 2-step nilpotent Lie superalgebra.
    pub lie: SuperAlgebra,
    /// The supersymmetric central-valued product.
    pub mu: ProductTensor,
    /// The product table as originally published (may disagree with
    /// `algebra` in a few entries).
    pub printed: ProductTensor,
}

impl QuadraticFixture {
    pub fn fixture(&self) -> Fixture {
        Fixture {
            name: self.name,
            algebra: self.algebra.clone(),
            form: self.form.clone(),
        }
    }
}

fn set(t: &mut ProductTensor, sp: &SuperSpace, a: &str, b: &str, terms: &[(&str, Scalar)]) {
    let i = sp.index_of(a).expect("fixture label");
    let j = sp.index_of(b).expect("fixture label");
    for (c, v) in terms {
        let k = sp.index_of(c).expect("fixture label");
        t.add_to(i, j, k, v);
    }
}

fn form_entries(entries: &[(&str, &str, Scalar)]) -> Vec<(String, String, Scalar)> {
    entries
        .iter()
        .map(|(a, b, v)| (a.to_string(), b.to_string(), v.clone()))
        .collect()
}

fn one() -> Scalar {
    Scalar::one()
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Six-dimensional `(4|2)` pseudo-Euclidean algebra, kept verbatim as
/// published. The published account calls it a flat left-Leibniz
/// superalgebra, but the printed table fails the left Leibniz identity at
/// `(e4, e1, e1)` (the symmetrized product `e1*e4 + e4*e1 = 2(e1+e3)` would
/// force `L_{e1+e3} = 0` while `e1*e1` is nonzero), its form is not
/// invariant, and the printed Levi-Civita tables fail both torsion and
/// compatibility. It is shipped as a diagnostic fixture for `verify-pair`.
pub fn flat_noninvariant_4_2() -> Fixture {
    let sp = SuperSpace::new(vec!["e1", "e2", "e3", "e4"], vec!["f1", "f2"]).unwrap();
    let mut t = ProductTensor::new();
    set(&mut t, &sp, "e1", "e1", &[("e2", one()), ("e3", one())]);
    set(&mut t, &sp, "e4", "e4", &[("e2", one())]);
    set(&mut t, &sp, "f2", "e4", &[("f1", int(2))]);
    set(&mut t, &sp, "e4", "f2", &[("f1", int(-2))]);
    set(&mut t, &sp, "f2", "f2", &[("e2", one()), ("e3", int(-2))]);
    set(&mut t, &sp, "e1", "e4", &[("e1", one()), ("e3", one())]);
    set(&mut t, &sp, "e4", "e1", &[("e1", one()), ("e3", one())]);
    set(&mut t, &sp, "e1", "f2", &[("f1", one())]);
    set(&mut t, &sp, "f2", "e1", &[("f1", one())]);
    let algebra = SuperAlgebra::new(sp.clone(), t).unwrap();
    let form = build_form(
        &sp,
        Parity::Even,
        &form_entries(&[("e1", "e2", one()), ("e3", "e4", one()), ("f1", "f2", one())]),
    )
    .unwrap();
    Fixture {
        name: "flat-4-2",
        algebra,
        form,
    }
}

/// The Levi-Civita tables published alongside [`flat_noninvariant_4_2`].
/// They do not verify: torsion already fails at `(e4, e4)` and the
/// compatibility condition fails at `(e1, f2, f2)`.
pub fn flat_noninvariant_4_2_printed_pair() -> (ProductTensor, ProductTensor) {
    let sp = flat_noninvariant_4_2().algebra.space().clone();
    let h = Scalar::half();
    let mut star = ProductTensor::new();
    set(&mut star, &sp, "e1", "e1", &[("e2", h.clone()), ("e3", h.clone())]);
    set(&mut star, &sp, "e4", "e4", &[("e2", h.clone())]);
    set(&mut star, &sp, "f2", "e4", &[("f1", one())]);
    set(&mut star, &sp, "e4", "f2", &[("f1", int(-1))]);
    set(&mut star, &sp, "f2", "f2", &[("e2", h.clone()), ("e3", int(-1))]);
    set(&mut star, &sp, "e1", "e4", &[("e1", h.clone()), ("e3", h.clone())]);
    set(&mut star, &sp, "e4", "e1", &[("e1", h.clone()), ("e3", h.clone())]);
    set(&mut star, &sp, "e1", "f2", &[("f1", h.clone())]);
    set(&mut star, &sp, "f2", "e1", &[("f1", h.clone())]);
    let mut circ = ProductTensor::new();
    set(&mut circ, &sp, "e1", "e1", &[("e2", h.clone()), ("e3", h.clone())]);
    set(&mut circ, &sp, "e4", "e4", &[("e2", -h.clone())]);
    set(&mut circ, &sp, "f2", "e4", &[("f1", one())]);
    set(&mut circ, &sp, "e4", "f2", &[("f1", int(-1))]);
    set(&mut circ, &sp, "f2", "f2", &[("e2", -h.clone()), ("e3", one())]);
    set(&mut circ, &sp, "e1", "e4", &[("e1", h.clone()), ("e3", h.clone())]);
    set(&mut circ, &sp, "e4", "e1", &[("e1", h.clone()), ("e3", h.clone())]);
    set(&mut circ, &sp, "e1", "f2", &[("f1", h.clone())]);
    set(&mut circ, &sp, "f2", "e1", &[("f1", h)]);
    (star, circ)
}

/// `(2|2)` odd-quadratic 2-step nilpotent symmetric Leibniz family.
pub fn odd_quadratic_2_2(alpha: &Scalar) -> QuadraticFixture {
    let sp = SuperSpace::new(vec!["e1", "e2"], vec!["f1", "f2"]).unwrap();
    let mut bracket = ProductTensor::new();
    set(&mut bracket, &sp, "f1", "f1", &[("e1", one())]);
    let lie = SuperAlgebra::new(sp.clone(), bracket).unwrap();

    let mut mu = ProductTensor::new();
    set(&mut mu, &sp, "e2", "e2", &[("e1", alpha.clone())]);
    set(&mut mu, &sp, "e2", "f1", &[("f2", alpha.clone())]);
    set(&mut mu, &sp, "f1", "e2", &[("f2", alpha.clone())]);

    let mut t = lie.product().clone();
    for (i, j, k, v) in mu.iter() {
        t.add_to(i, j, k, v);
    }
    let algebra = SuperAlgebra::new(sp.clone(), t.clone()).unwrap();
    let form = build_form(
        &sp,
        Parity::Odd,
        &form_entries(&[("e1", "f1", one()), ("e2", "f2", one())]),
    )
    .unwrap();
    QuadraticFixture {
        name: "odd-2-2",
        algebra,
        form,
        lie,
        mu,
        printed: t,
    }
}

/// The printed Levi-Civita tables of [`odd_quadratic_2_2`] at `alpha = 1`.
/// The `circ` table lists `f1 circ f1 = e1/2`, which violates torsion; the
/// verified value is `-e1/2`.
pub fn odd_quadratic_2_2_printed_pair() -> (ProductTensor, ProductTensor) {
    let sp = odd_quadratic_2_2(&one()).algebra.space().clone();
    let h = Scalar::half();
    let mut star = ProductTensor::new();
    set(&mut star, &sp, "e2", "e2", &[("e1", h.clone())]);
    set(&mut star, &sp, "e2", "f1", &[("f2", h.clone())]);
    set(&mut star, &sp, "f1", "e2", &[("f2", h.clone())]);
    set(&mut star, &sp, "f1", "f1", &[("e1", h.clone())]);
    let circ = star.clone();
    (star, circ)
}

/// `(2|2)` even-quadratic 2-step nilpotent symmetric Leibniz family.
pub fn even_quadratic_2_2(alpha: &Scalar) -> QuadraticFixture {
    let sp = SuperSpace::new(vec!["e1", "e2"], vec!["e3", "e4"]).unwrap();
    let mut bracket = ProductTensor::new();
    set(&mut bracket, &sp, "e2", "e4", &[("e3", one())]);
    set(&mut bracket, &sp, "e4", "e2", &[("e3", int(-1))]);
    set(&mut bracket, &sp, "e4", "e4", &[("e1", one())]);
    let lie = SuperAlgebra::new(sp.clone(), bracket).unwrap();

    let mut mu = ProductTensor::new();
    set(&mut mu, &sp, "e2", "e2", &[("e1", alpha.clone())]);

    let mut t = lie.product().clone();
    for (i, j, k, v) in mu.iter() {
        t.add_to(i, j, k, v);
    }
    let algebra = SuperAlgebra::new(sp.clone(), t.clone()).unwrap();
    let form = build_form(
        &sp,
        Parity::Even,
        &form_entries(&[("e1", "e2", one()), ("e3", "e4", one())]),
    )
    .unwrap();
    QuadraticFixture {
        name: "even-2-2",
        algebra,
        form,
        lie,
        mu,
        printed: t,
    }
}

/// `(2|4)` even-quadratic 2-step nilpotent symmetric Leibniz family.
///
/// The published table lists `e6 * e5 = beta e1`; the supersymmetric `mu`
/// forces `-beta e1` there, and only the reconstruction is invariant.
pub fn even_quadratic_2_4(alpha: &Scalar, beta: &Scalar) -> QuadraticFixture {
    let sp = SuperSpace::new(vec!["e1", "e2"], vec!["e3", "e4", "e5", "e6"]).unwrap();
    let mut bracket = ProductTensor::new();
    set(&mut bracket, &sp, "e2", "e5", &[("e3", one())]);
    set(&mut bracket, &sp, "e5", "e2", &[("e3", int(-1))]);
    set(&mut bracket, &sp, "e2", "e6", &[("e4", one())]);
    set(&mut bracket, &sp, "e6", "e2", &[("e4", int(-1))]);
    set(&mut bracket, &sp, "e5", "e5", &[("e1", one())]);
    set(&mut bracket, &sp, "e6", "e6", &[("e1", one())]);
    let lie = SuperAlgebra::new(sp.clone(), bracket).unwrap();

    let mut mu = ProductTensor::new();
    set(&mut mu, &sp, "e2", "e2", &[("e1", alpha.clone())]);
    set(&mut mu, &sp, "e2", "e5", &[("e4", beta.clone())]);
    set(&mut mu, &sp, "e5", "e2", &[("e4", beta.clone())]);
    set(&mut mu, &sp, "e2", "e6", &[("e3", -beta.clone())]);
    set(&mut mu, &sp, "e6", "e2", &[("e3", -beta.clone())]);
    set(&mut mu, &sp, "e5", "e6", &[("e1", beta.clone())]);
    set(&mut mu, &sp, "e6", "e5", &[("e1", -beta.clone())]);

    let mut t = lie.product().clone();
    for (i, j, k, v) in mu.iter() {
        t.add_to(i, j, k, v);
    }
    let algebra = SuperAlgebra::new(sp.clone(), t.clone()).unwrap();

    // Published table: identical except e6 * e5 = +beta e1.
    let mut printed = t.clone();
    let (i6, i5, i1) = (
        sp.index_of("e6").unwrap(),
        sp.index_of("e5").unwrap(),
        sp.index_of("e1").unwrap(),
    );
    printed.set(i6, i5, i1, beta.clone());

    let form = build_form(
        &sp,
        Parity::Even,
        &form_entries(&[("e1", "e2", one()), ("e3", "e5", one()), ("e4", "e6", one())]),
    )
    .unwrap();
    QuadraticFixture {
        name: "even-2-4",
        algebra,
        form,
        lie,
        mu,
        printed,
    }
}

/// `(3|3)` odd-quadratic 2-step nilpotent symmetric Leibniz family.
///
/// The published table mixes up the bracket contributions of the four
/// even-odd products; the reconstruction from `(bracket, mu)` is the
/// invariant one.
pub fn odd_quadratic_3_3(alpha: &Scalar, beta: &Scalar, lambda: &Scalar) -> QuadraticFixture {
    let sp = SuperSpace::new(vec!["e1", "e2", "e3"], vec!["f1", "f2", "f3"]).unwrap();
    let mut bracket = ProductTensor::new();
    set(&mut bracket, &sp, "e1", "e2", &[("e3", one())]);
    set(&mut bracket, &sp, "e2", "e1", &[("e3", int(-1))]);
    set(&mut bracket, &sp, "e2", "f3", &[("f1", one())]);
    set(&mut bracket, &sp, "f3", "e2", &[("f1", int(-1))]);
    set(&mut bracket, &sp, "e1", "f3", &[("f2", int(-1))]);
    set(&mut bracket, &sp, "f3", "e1", &[("f2", one())]);
    let lie = SuperAlgebra::new(sp.clone(), bracket).unwrap();

    let mut mu = ProductTensor::new();
    set(&mut mu, &sp, "e1", "e1", &[("e3", alpha.clone())]);
    set(&mut mu, &sp, "e1", "e2", &[("e3", beta.clone())]);
    set(&mut mu, &sp, "e2", "e1", &[("e3", beta.clone())]);
    set(&mut mu, &sp, "e2", "e2", &[("e3", lambda.clone())]);
    set(&mut mu, &sp, "e1", "f3", &[("f1", alpha.clone()), ("f2", beta.clone())]);
    set(&mut mu, &sp, "f3", "e1", &[("f1", alpha.clone()), ("f2", beta.clone())]);
    set(&mut mu, &sp, "e2", "f3", &[("f1", beta.clone()), ("f2", lambda.clone())]);
    set(&mut mu, &sp, "f3", "e2", &[("f1", beta.clone()), ("f2", lambda.clone())]);

    let mut t = lie.product().clone();
    for (i, j, k, v) in mu.iter() {
        t.add_to(i, j, k, v);
    }
    let algebra = SuperAlgebra::new(sp.clone(), t.clone()).unwrap();

    // Published table.
    let mut printed = ProductTensor::new();
    set(&mut printed, &sp, "e1", "e1", &[("e3", alpha.clone())]);
    set(&mut printed, &sp, "e1", "e2", &[("e3", &one() + beta)]);
    set(&mut printed, &sp, "e2", "e1", &[("e3", beta - &one())]);
    set(&mut printed, &sp, "e2", "e2", &[("e3", lambda.clone())]);
    set(&mut printed, &sp, "e1", "f3", &[("f1", &one() + alpha), ("f2", beta.clone())]);
    set(&mut printed, &sp, "f3", "e1", &[("f1", alpha - &one()), ("f2", beta.clone())]);
    set(&mut printed, &sp, "e2", "f3", &[("f1", beta.clone()), ("f2", lambda - &one())]);
    set(&mut printed, &sp, "f3", "e2", &[("f1", beta.clone()), ("f2", lambda + &one())]);

    let form = build_form(
        &sp,
        Parity::Odd,
        &form_entries(&[("e1", "f1", one()), ("e2", "f2", one()), ("e3", "f3", one())]),
    )
    .unwrap();
    QuadraticFixture {
        name: "odd-3-3",
        algebra,
        form,
        lie,
        mu,
        printed,
    }
}

/// `sl(2)` with an invariant form: quadratic but not 2-step nilpotent, so
/// not flat.
pub fn sl2() -> Fixture {
    let sp = SuperSpace::new(vec!["h", "x", "y"], vec![]).unwrap();
    let mut t = ProductTensor::new();
    set(&mut t, &sp, "h", "x", &[("x", int(2))]);
    set(&mut t, &sp, "x", "h", &[("x", int(-2))]);
    set(&mut t, &sp, "h", "y", &[("y", int(-2))]);
    set(&mut t, &sp, "y", "h", &[("y", int(2))]);
    set(&mut t, &sp, "x", "y", &[("h", one())]);
    set(&mut t, &sp, "y", "x", &[("h", int(-1))]);
    let algebra = SuperAlgebra::new(sp.clone(), t).unwrap();
    let form = build_form(
        &sp,
        Parity::Even,
        &form_entries(&[("h", "h", int(2)), ("x", "y", one())]),
    )
    .unwrap();
    Fixture {
        name: "sl2",
        algebra,
        form,
    }
}

/// All embedded fixtures at their default parameter values.
pub fn all_fixtures() -> Vec<Fixture> {
    vec![
        flat_noninvariant_4_2(),
        even_quadratic_2_2(&one()).fixture(),
        even_quadratic_2_4(&one(), &one()).fixture(),
        odd_quadratic_2_2(&one()).fixture(),
        odd_quadratic_3_3(&one(), &one(), &one()).fixture(),
        sl2(),
    ]
}

pub fn by_name(name: &str) -> Result<Fixture, Error> {
    all_fixtures()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownLabel(format!("fixture {name}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IdentityKind;

    #[test]
    fn all_fixtures_build_and_have_nondegenerate_forms() {
        for f in all_fixtures() {
            assert_eq!(f.algebra.space(), f.form.space(), "{}", f.name);
        }
    }

    #[test]
    fn quadratic_fixtures_are_symmetric_leibniz_and_invariant() {
        let a = one();
        for q in [
            even_quadratic_2_2(&a),
            even_quadratic_2_4(&a, &a),
            odd_quadratic_2_2(&a),
            odd_quadratic_3_3(&a, &a, &a),
        ] {
            assert!(q.algebra.check(IdentityKind::SymmetricLeibniz).unwrap().holds, "{}", q.name);
            assert!(q.algebra.check(IdentityKind::TwoStepNilpotent).unwrap().holds, "{}", q.name);
            assert!(q.lie.check(IdentityKind::Lie).unwrap().holds, "{}", q.name);
            assert!(q.form.is_invariant(&q.algebra).unwrap().holds, "{}", q.name);
        }
    }

    #[test]
    fn published_4_2_table_fails_left_leibniz_and_invariance() {
        let f = flat_noninvariant_4_2();
        let report = f.algebra.check(IdentityKind::LeftLeibniz).unwrap();
        assert!(!report.holds);
        assert_eq!(
            report.counterexample.unwrap().tuple,
            vec!["e1", "e4", "e4"],
            "first violation in lexicographic order"
        );
        assert!(!f.form.is_invariant(&f.algebra).unwrap().holds);
    }

    #[test]
    fn sl2_is_lie_and_invariant() {
        let f = sl2();
        assert!(f.algebra.check(IdentityKind::Lie).unwrap().holds);
        assert!(f.form.is_invariant(&f.algebra).unwrap().holds);
        assert!(!f.algebra.check(IdentityKind::TwoStepNilpotent).unwrap().holds);
    }

    #[test]
    fn fixture_lookup() {
        assert!(by_name("sl2").is_ok());
        assert!(by_name("nope").is_err());
        assert_eq!(all_fixtures().len(), 6);
    }
}
