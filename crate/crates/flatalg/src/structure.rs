//! Structural invariants and the quadratic characterisations.

use crate::algebra::{
    CheckReport, Counterexample, IdentityKind, ProductTensor, Side, SideValue, SuperAlgebra,
};
use crate::bilinear::{BilinearForm, SubSpace};
use crate::error::Error;
use crate::levicivita::is_flat;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::space::{koszul, LinearMap, Parity, SuperSpace, Vector};

/// Span of the symmetrised products `u*v + (-1)^{|u||v|} v*u`; zero exactly
/// for Lie superalgebras.
pub fn leibniz_ideal(alg: &SuperAlgebra) -> SubSpace {
    let space = alg.space();
    let mut gens = Vec::new();
    for i in space.indices() {
        for j in space.indices() {
            let v = alg
                .basis_product(i, j)
                .add(&alg.basis_product(j, i).scale(&koszul(space.parity(i), space.parity(j))));
            if !v.is_zero() {
                gens.push(v);
            }
        }
    }
    SubSpace::span(space, &gens)
}

fn joint_kernel(maps: &[LinearMap], space: &SuperSpace) -> SubSpace {
    if maps.is_empty() {
        return SubSpace::full(space);
    }
    let n = space.dim();
    let stacked = Matrix::from_fn(maps.len() * n, n, |r, c| {
        maps[r / n].matrix.at(r % n, c).clone()
    });
    let vectors: Vec<Vector> = stacked
        .kernel_basis()
        .into_iter()
        .map(|coords| space.vector_from_coords(&coords))
        .collect();
    SubSpace::span(space, &vectors)
}

/// `{u : u * A = 0}`.
pub fn left_annihilator(alg: &SuperAlgebra) -> SubSpace {
    let space = alg.space();
    // u * b_j = 0 for all j; as constraints on u this is the kernel of the
    // stacked right-multiplication matrices (without the Koszul sign, which
    // does not change the kernel).
    let n = space.dim();
    let maps: Vec<LinearMap> = (0..n)
        .map(|j| {
            let images: Vec<Vector> = (0..n).map(|i| alg.basis_product(i, j)).collect();
            LinearMap::from_images(space, space, &images)
        })
        .collect();
    joint_kernel(&maps, space)
}

/// `{u : A * u = 0}`.
pub fn right_annihilator(alg: &SuperAlgebra) -> SubSpace {
    let space = alg.space();
    let n = space.dim();
    let maps: Vec<LinearMap> = (0..n)
        .map(|i| {
            let images: Vec<Vector> = (0..n).map(|j| alg.basis_product(i, j)).collect();
            LinearMap::from_images(space, space, &images)
        })
        .collect();
    joint_kernel(&maps, space)
}

/// Two-sided annihilator `{u : u*A = A*u = 0}`.
pub fn annihilator(alg: &SuperAlgebra) -> SubSpace {
    left_annihilator(alg).intersect(&right_annihilator(alg))
}

/// The center: the left annihilator on super-anticommutative inputs, the
/// two-sided annihilator otherwise.
pub fn center(alg: &SuperAlgebra) -> SubSpace {
    if alg
        .check(IdentityKind::SuperAnticommutative)
        .map(|r| r.holds)
        .unwrap_or(false)
    {
        left_annihilator(alg)
    } else {
        annihilator(alg)
    }
}

/// Span of all products `A * A`.
pub fn derived_span(alg: &SuperAlgebra) -> SubSpace {
    let space = alg.space();
    let mut gens = Vec::new();
    for i in space.indices() {
        for j in space.indices() {
            let v = alg.basis_product(i, j);
            if !v.is_zero() {
                gens.push(v);
            }
        }
    }
    SubSpace::span(space, &gens)
}

/// True iff `(A*A)*A = 0` and `A*(A*A) = 0`, checked tensor-exhaustively.
pub fn is_two_step_nilpotent(alg: &SuperAlgebra) -> bool {
    alg.check(IdentityKind::TwoStepNilpotent)
        .map(|r| r.holds)
        .unwrap_or(false)
}

/// Data for building a 2-step nilpotent symmetric Leibniz product from a
/// Lie bracket and a supersymmetric central-valued product `mu`.
#[derive(Clone, Debug)]
pub struct MuData {
    pub lie: SuperAlgebra,
    pub mu: ProductTensor,
}

impl MuData {
    /// Checks every invariant: the bracket is a 2-step nilpotent Lie
    /// superalgebra, `mu` is even and supersymmetric, takes values in the
    /// center, and kills brackets and its own values.
    pub fn validate(&self) -> Result<(), Error> {
        let space = self.lie.space().clone();
        let mu_alg = SuperAlgebra::new(space.clone(), self.mu.clone())
            .map_err(|e| Error::MuDataViolation(format!("mu is not parity compatible: {e}")))?;
        if !self.lie.check(IdentityKind::Lie)?.holds {
            return Err(Error::MuDataViolation("bracket is not a Lie superalgebra".into()));
        }
        if !is_two_step_nilpotent(&self.lie) {
            return Err(Error::MuDataViolation("bracket is not 2-step nilpotent".into()));
        }
        let sym = mu_alg.check(IdentityKind::SuperCommutative)?;
        if !sym.holds {
            return Err(Error::MuDataViolation(format!(
                "mu is not supersymmetric at {}",
                sym.counterexample.map(|c| c.describe()).unwrap_or_default()
            )));
        }
        let z = center(&self.lie);
        for i in space.indices() {
            for j in space.indices() {
                let m = mu_alg.basis_product(i, j);
                if !z.contains(&m) {
                    return Err(Error::MuDataViolation(format!(
                        "mu({}, {}) is not central",
                        space.label(i),
                        space.label(j)
                    )));
                }
                for k in space.indices() {
                    let w = space.basis_vector(k);
                    let a = mu_alg.evaluate(&self.lie.basis_product(i, j), &w)?;
                    if !a.is_zero() {
                        return Err(Error::MuDataViolation(format!(
                            "mu([{}, {}], {}) is nonzero",
                            space.label(i),
                            space.label(j),
                            space.label(k)
                        )));
                    }
                    let b = mu_alg.evaluate(&m, &w)?;
                    if !b.is_zero() {
                        return Err(Error::MuDataViolation(format!(
                            "mu(mu({}, {}), {}) is nonzero",
                            space.label(i),
                            space.label(j),
                            space.label(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds `u*v = [u,v] + mu(u,v)`; the output is a 2-step nilpotent
/// symmetric Leibniz superalgebra (asserted).
pub fn leibniz_from_lie_mu(data: &MuData) -> Result<SuperAlgebra, Error> {
    data.validate()?;
    let mut t = data.lie.product().clone();
    for (i, j, k, v) in data.mu.iter() {
        t.add_to(i, j, k, v);
    }
    let alg = SuperAlgebra::new(data.lie.space().clone(), t)?;
    let sym = alg.check(IdentityKind::SymmetricLeibniz)?;
    if !sym.holds {
        return Err(Error::Internal(format!(
            "bracket + mu is not symmetric Leibniz at {}",
            sym.counterexample.map(|c| c.describe()).unwrap_or_default()
        )));
    }
    if !is_two_step_nilpotent(&alg) {
        return Err(Error::Internal("bracket + mu is not 2-step nilpotent".into()));
    }
    Ok(alg)
}

/// Sparse trilinear tensor with associated isotropic subspace, as produced
/// by [`trilinear_data`].
#[derive(Clone, Debug)]
pub struct TrilinearData {
    pub space: SuperSpace,
    /// `T(u,v,w) = <mu(u,v), w>` on basis triples.
    pub entries: Vec<(usize, usize, usize, Scalar)>,
    pub j: SubSpace,
    pub parity: Parity,
}

/// Extracts `T(u,v,w) = <mu(u,v), w>` from the symmetric part of the
/// product and validates the characterisation conditions for the supplied
/// isotropic central subspace `J`:
/// `J` totally isotropic, `J` inside the center of the bracket part,
/// cyclic supersymmetry of `T`, and `T(Jperp, ., .) = 0`.
pub fn trilinear_data(
    alg: &SuperAlgebra,
    form: &BilinearForm,
    j: &SubSpace,
) -> Result<TrilinearData, Error> {
    if alg.space() != form.space() {
        return Err(Error::SpaceMismatch);
    }
    let space = alg.space().clone();
    let sym = alg.check(IdentityKind::SymmetricLeibniz)?;
    if !sym.holds {
        return Err(Error::NotSymmetricLeibniz(
            sym.counterexample.map(|c| c.describe()).unwrap_or_default(),
        ));
    }
    if !is_two_step_nilpotent(alg) {
        return Err(Error::NotTwoStepNilpotent("product of products is nonzero".into()));
    }
    let (minus, plus) = alg.polarization();
    if !form.is_totally_isotropic(j) {
        return Err(Error::MuDataViolation("J is not totally isotropic".into()));
    }
    let z = center(&minus);
    for b in j.basis() {
        if !z.contains(b) {
            return Err(Error::MuDataViolation("J is not contained in the center".into()));
        }
    }

    let n = space.dim();
    let p = |i: usize| space.parity(i);
    let t = |i: usize, jdx: usize, k: usize| -> Scalar {
        form.eval(&plus.basis_product(i, jdx), &space.basis_vector(k))
            .expect("same space")
    };

    // Cyclic supersymmetry of T.
    for i in 0..n {
        for jdx in 0..n {
            for k in 0..n {
                let lhs = t(i, jdx, k);
                let cyc = &koszul(p(i), p(jdx).plus(p(k))) * &t(jdx, k, i);
                if lhs != cyc {
                    return Err(Error::MuDataViolation(format!(
                        "T is not cyclic at ({}, {}, {}): {} vs {}",
                        space.label(i),
                        space.label(jdx),
                        space.label(k),
                        lhs,
                        cyc
                    )));
                }
            }
        }
    }

    // T(Jperp, ., .) = 0.
    let jperp = form.orthogonal(j);
    for w in jperp.basis() {
        for a in 0..n {
            for b in 0..n {
                let val = form.eval(
                    &plus.evaluate(w, &space.basis_vector(a)).expect("same space"),
                    &space.basis_vector(b),
                )?;
                if !val.is_zero() {
                    return Err(Error::MuDataViolation(format!(
                        "T(Jperp, ., .) is nonzero at ({:?}, {}, {})",
                        w,
                        space.label(a),
                        space.label(b)
                    )));
                }
            }
        }
    }

    let mut entries = Vec::new();
    for i in 0..n {
        for jdx in 0..n {
            for k in 0..n {
                let v = t(i, jdx, k);
                if !v.is_zero() {
                    entries.push((i, jdx, k, v));
                }
            }
        }
    }
    Ok(TrilinearData {
        space,
        entries,
        j: j.clone(),
        parity: form.parity(),
    })
}

/// Verdict sheet of [`quadratic_flat_report`].
#[derive(Clone, Debug)]
pub struct QuadraticFlatReport {
    pub flat: bool,
    pub symmetric_leibniz: bool,
    pub two_step_nilpotent: bool,
    /// `flat  <=>  symmetric Leibniz and 2-step nilpotent` on this instance.
    pub equivalence_consistent: bool,
    /// `(A*A)^perp = Ann(A)`; evaluated on symmetric Leibniz inputs.
    pub orth_annihilator_consistent: Option<bool>,
    /// The split test: bracket part a quadratic 2-step nilpotent Lie
    /// superalgebra and symmetric part a quadratic 2-step nilpotent
    /// associative superalgebra; evaluated on symmetric Leibniz inputs.
    pub split_consistent: Option<bool>,
}

impl QuadraticFlatReport {
    pub fn all_consistent(&self) -> bool {
        self.equivalence_consistent
            && self.orth_annihilator_consistent.unwrap_or(true)
            && self.split_consistent.unwrap_or(true)
    }
}

/// Checks, on one quadratic instance, the equivalence
/// `flat  <=>  symmetric Leibniz and 2-step nilpotent`, the annihilator
/// identity `(A*A)^perp = Ann(A)` and the bracket/symmetric split. Any
/// internal disagreement is a hard error.
pub fn quadratic_flat_report(
    alg: &SuperAlgebra,
    form: &BilinearForm,
) -> Result<QuadraticFlatReport, Error> {
    let inv = form.is_invariant(alg)?;
    if !inv.holds {
        return Err(Error::NotInvariant(
            inv.counterexample.map(|c| c.describe()).unwrap_or_default(),
        ));
    }
    let flat = is_flat(alg, form)?.holds;
    let symmetric = alg.check(IdentityKind::SymmetricLeibniz)?.holds;
    let nilpotent = is_two_step_nilpotent(alg);
    let equivalence_consistent = flat == (symmetric && nilpotent);
    if !equivalence_consistent {
        return Err(Error::Internal(format!(
            "flat={flat} but symmetric={symmetric}, 2-step nilpotent={nilpotent}"
        )));
    }

    let orth_annihilator_consistent = if symmetric {
        let ok = form.orthogonal(&derived_span(alg)) == annihilator(alg);
        if !ok {
            return Err(Error::Internal(
                "(A*A)^perp differs from Ann(A) on a quadratic symmetric Leibniz input".into(),
            ));
        }
        Some(ok)
    } else {
        None
    };

    let split_consistent = if symmetric {
        let (minus, plus) = alg.polarization();
        let minus_ok = minus.check(IdentityKind::Lie)?.holds
            && is_two_step_nilpotent(&minus)
            && form.is_invariant(&minus)?.holds;
        let plus_ok = plus.check(IdentityKind::SuperCommutative)?.holds
            && is_two_step_nilpotent(&plus)
            && form.is_invariant(&plus)?.holds
            && is_associative(&plus);
        let rhs = minus_ok && plus_ok && nilpotent;
        let ok = flat == rhs;
        if !ok {
            return Err(Error::Internal(format!(
                "flat={flat} but split verdict is {rhs}"
            )));
        }
        Some(ok)
    } else {
        None
    };

    Ok(QuadraticFlatReport {
        flat,
        symmetric_leibniz: symmetric,
        two_step_nilpotent: nilpotent,
        equivalence_consistent,
        orth_annihilator_consistent,
        split_consistent,
    })
}

fn is_associative(alg: &SuperAlgebra) -> bool {
    let space = alg.space();
    for i in space.indices() {
        for j in space.indices() {
            for k in space.indices() {
                let lhs = alg
                    .evaluate(&alg.basis_product(i, j), &space.basis_vector(k))
                    .expect("same space");
                let rhs = alg
                    .evaluate(&space.basis_vector(i), &alg.basis_product(j, k))
                    .expect("same space");
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks that `phi` is an isometric isomorphism `(a_alg, a_form) ->
/// (b_alg, b_form)`: even, bijective, multiplicative on basis pairs and
/// form-preserving on basis pairs.
pub fn verify_isometric_isomorphism(
    a: (&SuperAlgebra, &BilinearForm),
    b: (&SuperAlgebra, &BilinearForm),
    phi: &LinearMap,
) -> Result<CheckReport, Error> {
    let (a_alg, a_form) = a;
    let (b_alg, b_form) = b;
    if phi.domain != *a_alg.space() || phi.codomain != *b_alg.space() {
        return Err(Error::SpaceMismatch);
    }
    if phi.degree != Some(Parity::Even) {
        return Err(Error::NotEven);
    }
    if !phi.is_bijective() {
        return Err(Error::NotBijective);
    }
    let space = a_alg.space();
    for i in space.indices() {
        for j in space.indices() {
            let lhs = phi.apply(&a_alg.basis_product(i, j))?;
            let rhs = b_alg.evaluate(&phi.image_of_basis(i), &phi.image_of_basis(j))?;
            if lhs != rhs {
                return Ok(CheckReport::fail(Counterexample {
                    tuple: vec![space.label(i).to_string(), space.label(j).to_string()],
                    clause: Some("phi(uv) = phi(u)phi(v)".into()),
                    lhs: SideValue::Vector(lhs),
                    rhs: SideValue::Vector(rhs),
                }));
            }
            let lv = b_form.eval(&phi.image_of_basis(i), &phi.image_of_basis(j))?;
            let rv = a_form
                .eval(&space.basis_vector(i), &space.basis_vector(j))?;
            if lv != rv {
                return Ok(CheckReport::fail(Counterexample {
                    tuple: vec![space.label(i).to_string(), space.label(j).to_string()],
                    clause: Some("<phi(u), phi(v)> = <u, v>".into()),
                    lhs: SideValue::Scalar(lv),
                    rhs: SideValue::Scalar(rv),
                }));
            }
        }
    }
    Ok(CheckReport::pass())
}

/// On flat inputs, the multiplications by Leibniz-ideal elements vanish for
/// both Levi-Civita products, and for non-Lie inputs the ideal meets its
/// orthogonal. Returns an error describing the first failed invariant.
pub fn leibniz_ideal_invariants(
    alg: &SuperAlgebra,
    form: &BilinearForm,
) -> Result<(), Error> {
    let pair = crate::levicivita::levi_civita(alg, form)?;
    let leib = leibniz_ideal(alg);
    for w in leib.basis() {
        // Echelon basis vectors are supported in a single parity block, so
        // they are homogeneous whenever the ideal is graded; split anyway.
        for part in [w.component(Parity::Even), w.component(Parity::Odd)] {
            if part.is_zero() {
                continue;
            }
            for (name, alg2, side) in [
                ("Lstar", pair.star(), Side::Left),
                ("Lcirc", pair.circ(), Side::Left),
                ("Rstar", pair.star(), Side::Right),
                ("Rcirc", pair.circ(), Side::Right),
            ] {
                let m = alg2.multiplication_operator(side, &part)?;
                if !m.is_zero() {
                    return Err(Error::Internal(format!(
                        "{name} does not vanish on the Leibniz ideal element {part:?}"
                    )));
                }
            }
        }
    }
    let is_lie = alg.check(IdentityKind::Lie)?.holds;
    if !is_lie {
        let meet = leib.intersect(&form.orthogonal(&leib));
        if meet.is_zero() {
            return Err(Error::Internal(
                "flat non-Lie input has Leib meeting its orthogonal trivially".into(),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn leibniz_ideal_examples() {
        let lie = fixtures::sl2().algebra;
        assert!(leibniz_ideal(&lie).is_zero());

        // 2-dim d*d = 2e
        let sp = SuperSpace::new(vec!["e", "d"], vec![]).unwrap();
        let mut t = ProductTensor::new();
        t.set(1, 1, 0, s(2));
        let alg = SuperAlgebra::new(sp.clone(), t).unwrap();
        let leib = leibniz_ideal(&alg);
        assert_eq!(leib.dim(), 1);
        assert!(leib.contains(&sp.basis_vector(0)));

        let q = fixtures::odd_quadratic_2_2(&s(1));
        let leib = leibniz_ideal(&q.algebra);
        let sp = q.algebra.space().clone();
        assert_eq!(leib.dim(), 2);
        assert!(leib.contains(&sp.basis_vector(sp.index_of("e1").unwrap())));
        assert!(leib.contains(&sp.basis_vector(sp.index_of("f2").unwrap())));
    }

    #[test]
    fn center_and_annihilator_examples() {
        let sp = SuperSpace::new(vec!["a"], vec!["b"]).unwrap();
        let abelian = SuperAlgebra::zero(sp.clone());
        assert_eq!(center(&abelian), SubSpace::full(&sp));
        assert_eq!(annihilator(&abelian), SubSpace::full(&sp));

        let q = fixtures::even_quadratic_2_2(&s(1));
        let sp = q.algebra.space().clone();
        let z = center(&q.lie);
        assert_eq!(z.dim(), 2);
        assert!(z.contains(&sp.basis_vector(sp.index_of("e1").unwrap())));
        assert!(z.contains(&sp.basis_vector(sp.index_of("e3").unwrap())));

        let ann = annihilator(&q.algebra);
        assert_eq!(ann.dim(), 2);
        assert!(ann.contains(&sp.basis_vector(sp.index_of("e1").unwrap())));
        assert!(ann.contains(&sp.basis_vector(sp.index_of("e3").unwrap())));
    }

    #[test]
    fn two_step_nilpotency_examples() {
        assert!(is_two_step_nilpotent(&SuperAlgebra::zero(
            SuperSpace::new(vec!["a"], vec![]).unwrap()
        )));
        assert!(is_two_step_nilpotent(&fixtures::even_quadratic_2_4(&s(1), &s(1)).algebra));
        assert!(!is_two_step_nilpotent(&fixtures::sl2().algebra));
    }

    #[test]
    fn mu_reconstruction_matches_fixtures() {
        for q in [
            fixtures::even_quadratic_2_2(&s(1)),
            fixtures::even_quadratic_2_4(&s(1), &s(1)),
            fixtures::odd_quadratic_2_2(&s(1)),
            fixtures::odd_quadratic_3_3(&s(1), &s(1), &s(1)),
        ] {
            let data = MuData {
                lie: q.lie.clone(),
                mu: q.mu.clone(),
            };
            let rebuilt = leibniz_from_lie_mu(&data).unwrap();
            assert_eq!(rebuilt.product(), q.algebra.product(), "{}", q.name);
        }
    }

    #[test]
    fn mu_zero_returns_the_lie_algebra() {
        let q = fixtures::even_quadratic_2_2(&s(1));
        let data = MuData {
            lie: q.lie.clone(),
            mu: ProductTensor::new(),
        };
        assert_eq!(leibniz_from_lie_mu(&data).unwrap().product(), q.lie.product());
    }

    #[test]
    fn mu_violations_are_reported() {
        let q = fixtures::even_quadratic_2_2(&s(1));
        let sp = q.algebra.space().clone();
        // Non-central mu values: mu(e2,e2) = e2.
        let mut bad = ProductTensor::new();
        let e2 = sp.index_of("e2").unwrap();
        bad.set(e2, e2, e2, s(1));
        let err = leibniz_from_lie_mu(&MuData {
            lie: q.lie.clone(),
            mu: bad,
        })
        .unwrap_err();
        assert!(matches!(err, Error::MuDataViolation(_)));

        // Non-supersymmetric mu.
        let mut skew = ProductTensor::new();
        let e1 = sp.index_of("e1").unwrap();
        let e4 = sp.index_of("e4").unwrap();
        skew.set(e2, e4, e1, s(1));
        let err = leibniz_from_lie_mu(&MuData {
            lie: q.lie.clone(),
            mu: skew,
        })
        .unwrap_err();
        assert!(matches!(err, Error::MuDataViolation(_)));
    }

    #[test]
    fn printed_tables_diff_against_reconstruction() {
        // Two of the published tables disagree with the reconstruction.
        let q = fixtures::even_quadratic_2_4(&s(1), &s(2));
        assert_ne!(q.printed, *q.algebra.product());
        let q = fixtures::odd_quadratic_3_3(&s(1), &s(1), &s(1));
        assert_ne!(q.printed, *q.algebra.product());
        // The small families match entry for entry.
        let q = fixtures::even_quadratic_2_2(&s(1));
        assert_eq!(q.printed, *q.algebra.product());
        let q = fixtures::odd_quadratic_2_2(&s(1));
        assert_eq!(q.printed, *q.algebra.product());
    }

    #[test]
    fn quadratic_flat_reports() {
        for q in [
            fixtures::even_quadratic_2_2(&s(1)),
            fixtures::even_quadratic_2_4(&s(1), &s(1)),
            fixtures::odd_quadratic_2_2(&s(1)),
            fixtures::odd_quadratic_3_3(&s(1), &s(1), &s(1)),
        ] {
            let rep = quadratic_flat_report(&q.algebra, &q.form).unwrap();
            assert!(rep.flat && rep.all_consistent(), "{}", q.name);
            assert_eq!(rep.orth_annihilator_consistent, Some(true));
            assert_eq!(rep.split_consistent, Some(true));
        }

        let f = fixtures::sl2();
        let rep = quadratic_flat_report(&f.algebra, &f.form).unwrap();
        assert!(!rep.flat && !rep.two_step_nilpotent && rep.all_consistent());

        // Abelian with a pairing form.
        let sp = SuperSpace::new(vec!["a", "b"], vec![]).unwrap();
        let abelian = SuperAlgebra::zero(sp.clone());
        let form = crate::bilinear::build_form(
            &sp,
            Parity::Even,
            &[("a".to_string(), "b".to_string(), s(1))],
        )
        .unwrap();
        let rep = quadratic_flat_report(&abelian, &form).unwrap();
        assert!(rep.flat && rep.all_consistent());

        // Non-invariant forms are rejected.
        let g = fixtures::flat_noninvariant_4_2();
        assert!(matches!(
            quadratic_flat_report(&g.algebra, &g.form),
            Err(Error::NotInvariant(_))
        ));
    }

    #[test]
    fn trilinear_data_examples() {
        let q = fixtures::even_quadratic_2_2(&s(1));
        let sp = q.algebra.space().clone();
        let j = SubSpace::span(
            &sp,
            &[
                sp.basis_vector(sp.index_of("e1").unwrap()),
                sp.basis_vector(sp.index_of("e3").unwrap()),
            ],
        );
        let data = trilinear_data(&q.algebra, &q.form, &j).unwrap();
        // T(e2,e2,e2) = alpha = 1 is among the entries.
        let e2 = sp.index_of("e2").unwrap();
        assert!(data
            .entries
            .iter()
            .any(|(a, b, c, v)| (*a, *b, *c) == (e2, e2, e2) && *v == s(1)));

        // J = span{e3} with alpha != 0 forces mu = 0, so T(Jperp,.,.) != 0.
        let j_bad = SubSpace::span(&sp, &[sp.basis_vector(sp.index_of("e3").unwrap())]);
        assert!(matches!(
            trilinear_data(&q.algebra, &q.form, &j_bad),
            Err(Error::MuDataViolation(_))
        ));

        // mu = 0, J = 0 is valid with T = 0.
        let lie_only = q.lie.clone();
        let data = trilinear_data(&lie_only, &q.form, &SubSpace::zero(&sp)).unwrap();
        assert!(data.entries.is_empty());
    }

    #[test]
    fn isometric_isomorphism_checks() {
        let q = fixtures::odd_quadratic_2_2(&s(1));
        let id = LinearMap::identity(q.algebra.space().clone());
        let rep = verify_isometric_isomorphism(
            (&q.algebra, &q.form),
            (&q.algebra, &q.form),
            &id,
        )
        .unwrap();
        assert!(rep.holds);

        // Scaling by 2 breaks the isometry clause on a nonzero form.
        let two = id.scale(&s(2));
        let rep = verify_isometric_isomorphism(
            (&q.algebra, &q.form),
            (&q.algebra, &q.form),
            &two,
        )
        .unwrap();
        assert!(!rep.holds);

        // Odd or singular maps are rejected.
        let zero = LinearMap::zero(q.algebra.space().clone(), q.algebra.space().clone());
        assert!(matches!(
            verify_isometric_isomorphism((&q.algebra, &q.form), (&q.algebra, &q.form), &zero),
            Err(Error::NotBijective)
        ));
    }

    #[test]
    fn prop_ideal_invariants_on_flat_fixtures() {
        for q in [
            fixtures::even_quadratic_2_2(&s(1)),
            fixtures::odd_quadratic_2_2(&s(1)),
            fixtures::even_quadratic_2_4(&s(1), &s(1)),
            fixtures::odd_quadratic_3_3(&s(1), &s(1), &s(1)),
        ] {
            leibniz_ideal_invariants(&q.algebra, &q.form).unwrap();
        }
    }
}
