//! T*- and Pi(T*)-extensions of symmetric Leibniz superalgebras, and the
//! reduction of a reduced quadratic 2-step nilpotent symmetric Leibniz
//! superalgebra back to such an extension of a trivial algebra.

use std::collections::BTreeMap;

use crate::algebra::{IdentityKind, ProductTensor, SuperAlgebra};
use crate::bilinear::{build_form, BilinearForm, SubSpace};
use crate::error::Error;
use crate::linalg::{solve_any, Matrix};
use crate::scalar::Scalar;
use crate::space::{koszul, LinearMap, Parity, SuperSpace, Vector};
use crate::structure::{annihilator, derived_span, is_two_step_nilpotent, verify_isometric_isomorphism};

use super::extend_space;

/// A trilinear tensor `T(u,v,w)` over a base space, encoding the 2-cochain
/// `Omega(u,v)(w)`. `parity` is the parity of the values: even tensors feed
/// T*-extensions, odd ones Pi(T*)-extensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTensor {
    space: SuperSpace,
    parity: Parity,
    entries: BTreeMap<(usize, usize, usize), Scalar>,
}

impl CocycleTensor {
    pub fn new(
        space: SuperSpace,
        parity: Parity,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self, Error> {
        let mut t = CocycleTensor {
            space,
            parity,
            entries: BTreeMap::new(),
        };
        for (i, j, k, v) in entries {
            t.set(*i, *j, *k, v.clone())?;
        }
        Ok(t)
    }

    pub fn empty(space: SuperSpace, parity: Parity) -> Self {
        CocycleTensor {
            space,
            parity,
            entries: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) -> Result<(), Error> {
        let p = self
            .space
            .parity(i)
            .plus(self.space.parity(j))
            .plus(self.space.parity(k));
        if !v.is_zero() && p != self.parity {
            return Err(Error::ParityViolation(format!(
                "a {} trilinear tensor cannot have an entry at ({}, {}, {})",
                self.parity,
                self.space.label(i),
                self.space.label(j),
                self.space.label(k)
            )));
        }
        if v.is_zero() {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), v);
        }
        Ok(())
    }

    /// Writes the whole cyclic orbit of `(i, j, k)` consistently:
    /// `T(v,w,u) = (-1)^{|u|(|v|+|w|)} T(u,v,w)` applied twice.
    pub fn set_cyclic(&mut self, i: usize, j: usize, k: usize, v: Scalar) -> Result<(), Error> {
        let p = |x: usize| self.space.parity(x);
        let s1 = koszul(p(i), p(j).plus(p(k)));
        let s2 = &s1 * &koszul(p(j), p(k).plus(p(i)));
        self.set(i, j, k, v.clone())?;
        self.set(j, k, i, &s1 * &v)?;
        self.set(k, i, j, &s2 * &v)?;
        Ok(())
    }

    pub fn value(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.entries
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.entries.iter().map(|((i, j, k), v)| (*i, *j, *k, v))
    }

    /// First violation of `T(u,v,w) = (-1)^{|u|(|v|+|w|)} T(v,w,u)`.
    pub fn cyclicity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.space.dim();
        let p = |x: usize| self.space.parity(x);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.value(i, j, k);
                    let rhs = &koszul(p(i), p(j).plus(p(k))) * &self.value(j, k, i);
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclicity_violation().is_none()
    }

    /// Nondegeneracy in the contraction sense: `u -> T(u,.,.)` is injective.
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.space.dim();
        if n == 0 {
            return true;
        }
        let m = Matrix::from_fn(n * n, n, |r, c| self.value(c, r / n, r % n));
        m.kernel_basis().is_empty()
    }
}

/// A built (Pi)T*-extension.
#[derive(Clone, Debug)]
pub struct TStarExtension {
    pub algebra: SuperAlgebra,
    pub form: BilinearForm,
    /// Extension-space index of the i-th base vector.
    pub base_index: Vec<usize>,
    /// Extension-space index of the dual of the i-th base vector.
    pub dual_index: Vec<usize>,
    /// Whether the cochain is cyclic; equivalently whether `form` is
    /// invariant (the equivalence is verified).
    pub cyclic: bool,
}

fn t_star_common(
    base: &SuperAlgebra,
    omega: &CocycleTensor,
    shifted: bool,
) -> Result<TStarExtension, Error> {
    if omega.space() != base.space() {
        return Err(Error::SpaceMismatch);
    }
    let want = if shifted { Parity::Odd } else { Parity::Even };
    if omega.parity() != want {
        return Err(Error::WrongFormParity);
    }
    let sym = base.check(IdentityKind::SymmetricLeibniz)?;
    if !sym.holds {
        return Err(Error::NotSymmetricLeibniz(
            sym.counterexample.map(|c| c.describe()).unwrap_or_default(),
        ));
    }
    let space = base.space().clone();
    let n = space.dim();
    let p = |i: usize| space.parity(i);

    let lines: Vec<(String, Parity)> = (0..n)
        .map(|i| {
            let stem = format!("{}*", space.label(i));
            let parity = if shifted { p(i).flip() } else { p(i) };
            (stem, parity)
        })
        .collect();
    let line_refs: Vec<(&str, Parity)> = lines.iter().map(|(s, q)| (s.as_str(), *q)).collect();
    let ext = extend_space(&space, &line_refs);
    let base_index = ext.core_to_ext.clone();
    let dual_index = ext.adjoined.clone();

    let mut t = ProductTensor::new();
    for i in 0..n {
        for j in 0..n {
            // Base product and cochain term.
            for (k, c) in base.basis_product(i, j).iter() {
                t.add_to(base_index[i], base_index[j], base_index[k], c);
            }
            for k in 0..n {
                let v = omega.value(i, j, k);
                if !v.is_zero() {
                    t.add_to(base_index[i], base_index[j], dual_index[k], &v);
                }
            }
            // u . dual_j: the functional dual_j composed with R_u, with the
            // sign (-1)^{|dual_j||u|}.
            let dual_parity = if shifted { p(j).flip() } else { p(j) };
            let sign = koszul(dual_parity, p(i));
            for w in 0..n {
                // coefficient of dual_j at R_u(b_w) = (-1)^{|u||w|}(b_w b_i)_j
                let c = &(&sign * &koszul(p(i), p(w))) * &base.basis_product(w, i).coord(j);
                if !c.is_zero() {
                    t.add_to(base_index[i], dual_index[j], dual_index[w], &c);
                }
            }
            // dual_i . v: the functional dual_i composed with L_v.
            for w in 0..n {
                let c = base.basis_product(j, w).coord(i);
                if !c.is_zero() {
                    t.add_to(dual_index[i], base_index[j], dual_index[w], &c);
                }
            }
        }
    }
    let algebra = SuperAlgebra::new(ext.space.clone(), t)?;

    let entries: Vec<(String, String, Scalar)> = (0..n)
        .map(|i| {
            (
                ext.space.label(dual_index[i]).to_string(),
                ext.space.label(base_index[i]).to_string(),
                Scalar::one(),
            )
        })
        .collect();
    let form = build_form(&ext.space, if shifted { Parity::Odd } else { Parity::Even }, &entries)?;

    let built = algebra.check(IdentityKind::SymmetricLeibniz)?;
    if !built.holds {
        return Err(Error::CocycleViolation(
            built.counterexample.map(|c| c.describe()).unwrap_or_default(),
        ));
    }
    let cyclic = omega.is_cyclic();
    let invariant = form.is_invariant(&algebra)?.holds;
    if cyclic != invariant {
        return Err(Error::Internal(format!(
            "cyclicity ({cyclic}) and invariance ({invariant}) disagree"
        )));
    }
    Ok(TStarExtension {
        algebra,
        form,
        base_index,
        dual_index,
        cyclic,
    })
}

/// Builds `A (+) A*` with the coadjoint actions, the cochain term and the
/// hyperbolic even form `B(u+f, v+g) = f(v) + (-1)^{|u||v|} g(u)`.
/// `B` is invariant precisely when the cochain is cyclic (verified).
pub fn t_star_extension(
    base: &SuperAlgebra,
    omega: &CocycleTensor,
) -> Result<TStarExtension, Error> {
    t_star_common(base, omega, false)
}

/// Builds `A (+) Pi(A*)`: the duals carry flipped parity, the attached
/// hyperbolic form is odd, and the coadjoint action picks up the
/// parity-shift signs.
pub fn pi_t_star_extension(
    base: &SuperAlgebra,
    omega: &CocycleTensor,
) -> Result<TStarExtension, Error> {
    t_star_common(base, omega, true)
}

/// Result of reducing a quadratic 2-step nilpotent symmetric Leibniz
/// superalgebra to a (Pi)T*-extension of a trivial algebra.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// The chosen totally isotropic complement of the annihilator, as
    /// vectors of the original space.
    pub h_vectors: Vec<Vector>,
    /// The trivial base space carrying the extracted cochain.
    pub base_space: SuperSpace,
    pub omega: CocycleTensor,
    pub extension: TStarExtension,
    /// The verified isometric isomorphism from the input onto the extension.
    pub iso: LinearMap,
}

fn graded_vectors(s: &SubSpace) -> Vec<Vector> {
    let mut out = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        out.extend(s.parity_component(p).basis().iter().cloned());
    }
    out
}

/// Verifies `A*A = Ann(A) = (A*A)^perp`, constructs a totally isotropic
/// graded complement `h` of the annihilator by greedy hyperbolic
/// completion, extracts `T(u,v,w) = <uv, w>` on `h`, and returns the
/// extension of the trivial algebra on `h` together with the isometric
/// isomorphism onto it (verified exactly).
pub fn reduce_to_t_star(alg: &SuperAlgebra, form: &BilinearForm) -> Result<Reduction, Error> {
    if alg.space() != form.space() {
        return Err(Error::SpaceMismatch);
    }
    let space = alg.space().clone();
    let n = space.dim();
    if n == 0 {
        return Err(Error::NotReduced("the zero algebra is not reduced".into()));
    }
    let inv = form.is_invariant(alg)?;
    if !inv.holds {
        return Err(Error::NotInvariant(
            inv.counterexample.map(|c| c.describe()).unwrap_or_default(),
        ));
    }
    let sym = alg.check(IdentityKind::SymmetricLeibniz)?;
    if !sym.holds {
        return Err(Error::NotSymmetricLeibniz(
            sym.counterexample.map(|c| c.describe()).unwrap_or_default(),
        ));
    }
    if !is_two_step_nilpotent(alg) {
        return Err(Error::NotTwoStepNilpotent("a triple product is nonzero".into()));
    }
    let ann = annihilator(alg);
    if !form.is_totally_isotropic(&ann) {
        return Err(Error::NotReduced("the annihilator is not totally isotropic".into()));
    }
    let derived = derived_span(alg);
    if derived != ann || form.orthogonal(&derived) != ann {
        return Err(Error::NotReduced(
            "A*A, Ann(A) and (A*A)^perp do not coincide".into(),
        ));
    }

    // Greedy totally isotropic graded complement of the annihilator.
    let ann_vectors = graded_vectors(&ann);
    let mut chosen: Vec<Vector> = Vec::new();
    for idx in 0..n {
        let b = space.basis_vector(idx);
        let mut spanning = ann_vectors.clone();
        spanning.extend(chosen.iter().cloned());
        if SubSpace::span(&space, &spanning).contains(&b) {
            continue;
        }
        let pb = space.parity(idx);
        let candidates: Vec<&Vector> = ann_vectors
            .iter()
            .filter(|v| v.parity() == Some(pb))
            .collect();
        // Conditions on the correction c: <c, y> = <b, y> for the already
        // chosen vectors, plus <c, b> = <b,b>/2 when <b,b> can be nonzero.
        let mut targets: Vec<(&Vector, Scalar)> = chosen
            .iter()
            .map(|y| (y, form.eval(&b, y).expect("same space")))
            .collect();
        if form.parity() == Parity::Even && pb == Parity::Even {
            targets.push((&b, &form.eval(&b, &b).expect("same space") * &Scalar::half()));
        }
        let rows = Matrix::from_fn(targets.len(), candidates.len(), |r, c| {
            form.eval(candidates[c], targets[r].0).expect("same space")
        });
        let rhs: Vec<Scalar> = targets.iter().map(|(_, v)| v.clone()).collect();
        let Some(coeffs) = solve_any(&rows, &rhs) else {
            return Err(Error::Internal(
                "isotropic complement correction system is inconsistent".into(),
            ));
        };
        let mut x = b.clone();
        for (r, c) in coeffs.iter().enumerate() {
            x.add_assign_scaled(candidates[r], &-c);
        }
        // The corrected vector keeps h totally isotropic.
        for y in chosen.iter().chain(std::iter::once(&x)) {
            if !form.eval(&x, y).expect("same space").is_zero() {
                return Err(Error::Internal("isotropic correction failed".into()));
            }
        }
        chosen.push(x);
    }
    if chosen.len() != ann.dim() {
        return Err(Error::Internal(format!(
            "complement has dimension {}, annihilator {}",
            chosen.len(),
            ann.dim()
        )));
    }

    // Base space for the trivial algebra.
    let even_count = chosen
        .iter()
        .filter(|v| v.parity() == Some(Parity::Even))
        .count();
    let even_labels: Vec<String> = (0..even_count).map(|i| format!("h{}", i + 1)).collect();
    let odd_labels: Vec<String> = (even_count..chosen.len())
        .map(|i| format!("h{}", i + 1))
        .collect();
    let base_space = SuperSpace::new(even_labels, odd_labels)?;

    let mut omega = CocycleTensor::empty(base_space.clone(), form.parity());
    for (a, ua) in chosen.iter().enumerate() {
        for (b, ub) in chosen.iter().enumerate() {
            let prod = alg.evaluate(ua, ub)?;
            for (c, uc) in chosen.iter().enumerate() {
                let v = form.eval(&prod, uc)?;
                if !v.is_zero() {
                    omega.set(a, b, c, v)?;
                }
            }
        }
    }
    if !omega.is_cyclic() {
        return Err(Error::Internal("extracted cochain is not cyclic".into()));
    }
    if !omega.is_nondegenerate() {
        return Err(Error::Internal("extracted cochain is degenerate".into()));
    }

    let trivial = SuperAlgebra::zero(base_space.clone());
    let extension = match form.parity() {
        Parity::Even => t_star_extension(&trivial, &omega)?,
        Parity::Odd => pi_t_star_extension(&trivial, &omega)?,
    };

    // The isomorphism: decompose each basis vector over [h | ann] and send
    // the annihilator part to the dual functional <a, .>.
    let mut all = chosen.clone();
    all.extend(ann_vectors.iter().cloned());
    let basis_matrix = Matrix::from_fn(n, n, |r, c| all[c].coord(r));
    let inv_basis = basis_matrix.inverse()?;
    let ext_space = extension.algebra.space().clone();
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let coords = inv_basis.apply(&space.basis_vector(i).to_dense());
        let mut img = ext_space.zero_vector();
        let mut ann_part = space.zero_vector();
        for (c, coeff) in coords.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            if c < chosen.len() {
                let cur = img.coord(extension.base_index[c]) + coeff;
                img.set(extension.base_index[c], cur);
            } else {
                ann_part.add_assign_scaled(&all[c], coeff);
            }
        }
        for (j, h) in chosen.iter().enumerate() {
            let v = form.eval(&ann_part, h)?;
            if !v.is_zero() {
                let cur = img.coord(extension.dual_index[j]) + &v;
                img.set(extension.dual_index[j], cur);
            }
        }
        images.push(img);
    }
    let iso = LinearMap::from_images(&space, &ext_space, &images);
    let check = verify_isometric_isomorphism(
        (alg, form),
        (&extension.algebra, &extension.form),
        &iso,
    )?;
    if !check.holds {
        return Err(Error::Internal(format!(
            "reduction isomorphism fails at {}",
            check.counterexample.map(|c| c.describe()).unwrap_or_default()
        )));
    }

    Ok(Reduction {
        h_vectors: chosen,
        base_space,
        omega,
        extension,
        iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::levicivita::is_flat;
    use crate::structure::quadratic_flat_report;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn one_dimensional_even_example() {
        // Trivial base (1|0), T(u,u,u) = 1: the extension is u*u = u^*,
        // quadratic, flat and 2-step nilpotent.
        let h = SuperSpace::new(vec!["u"], vec![]).unwrap();
        let mut omega = CocycleTensor::empty(h.clone(), Parity::Even);
        omega.set_cyclic(0, 0, 0, s(1)).unwrap();
        let ext = t_star_extension(&SuperAlgebra::zero(h), &omega).unwrap();
        assert!(ext.cyclic);
        assert_eq!(ext.algebra.space().superdim(), (2, 0));
        let u = ext.base_index[0];
        let us = ext.dual_index[0];
        assert_eq!(ext.algebra.product().get(u, u, us), s(1));
        assert!(is_flat(&ext.algebra, &ext.form).unwrap().holds);
        let rep = quadratic_flat_report(&ext.algebra, &ext.form).unwrap();
        assert!(rep.flat && rep.all_consistent());

        // Round trip through the reduction.
        let red = reduce_to_t_star(&ext.algebra, &ext.form).unwrap();
        assert_eq!(red.base_space.superdim(), (1, 0));
        assert_eq!(red.omega.value(0, 0, 0), s(1));
    }

    #[test]
    fn zero_cochain_on_nontrivial_base_builds_and_is_invariant() {
        for q in [
            fixtures::even_quadratic_2_2(&s(1)),
            fixtures::odd_quadratic_2_2(&s(2)),
        ] {
            let omega = CocycleTensor::empty(q.algebra.space().clone(), Parity::Even);
            let ext = t_star_extension(&q.algebra, &omega).unwrap();
            assert!(ext.cyclic);
            assert!(ext
                .algebra
                .check(IdentityKind::SymmetricLeibniz)
                .unwrap()
                .holds);

            let omega = CocycleTensor::empty(q.algebra.space().clone(), Parity::Odd);
            let ext = pi_t_star_extension(&q.algebra, &omega).unwrap();
            assert!(ext.cyclic);
            assert!(ext
                .algebra
                .check(IdentityKind::SymmetricLeibniz)
                .unwrap()
                .holds);
            assert_eq!(ext.form.parity(), Parity::Odd);
        }
    }

    #[test]
    fn non_cyclic_cochain_builds_but_form_is_flagged() {
        let h = SuperSpace::new(vec!["u", "v"], vec![]).unwrap();
        let mut omega = CocycleTensor::empty(h.clone(), Parity::Even);
        // T(u,v,v) alone is not cyclic.
        omega.set(0, 1, 1, s(1)).unwrap();
        let ext = t_star_extension(&SuperAlgebra::zero(h), &omega).unwrap();
        assert!(!ext.cyclic);
        assert!(!ext.form.is_invariant(&ext.algebra).unwrap().holds);
    }

    #[test]
    fn reduce_even_2_2_fixture() {
        let q = fixtures::even_quadratic_2_2(&s(1));
        let red = reduce_to_t_star(&q.algebra, &q.form).unwrap();
        // h = span{e2, e4}.
        let sp = q.algebra.space().clone();
        assert_eq!(red.h_vectors.len(), 2);
        assert_eq!(red.h_vectors[0], sp.basis_vector(sp.index_of("e2").unwrap()));
        assert_eq!(red.h_vectors[1], sp.basis_vector(sp.index_of("e4").unwrap()));
        // T(e2,e2,e2) = alpha, T(e2,e4,e4) = 1, T(e4,e4,e2) = 1.
        assert_eq!(red.omega.value(0, 0, 0), s(1));
        assert_eq!(red.omega.value(0, 1, 1), s(1));
        assert_eq!(red.omega.value(1, 1, 0), s(1));
        assert_eq!(red.omega.value(1, 0, 1), s(-1));
    }

    #[test]
    fn reduce_odd_fixtures_round_trip() {
        for q in [
            fixtures::odd_quadratic_2_2(&s(1)),
            fixtures::odd_quadratic_3_3(&s(1), &s(1), &s(1)),
        ] {
            let red = reduce_to_t_star(&q.algebra, &q.form).unwrap();
            assert_eq!(red.extension.form.parity(), Parity::Odd);
            assert!(red.omega.is_nondegenerate());
        }
    }

    #[test]
    fn abelian_with_anisotropic_form_rejected() {
        let sp = SuperSpace::new(vec!["a"], vec![]).unwrap();
        let alg = SuperAlgebra::zero(sp.clone());
        let form = build_form(&sp, Parity::Even, &[("a".into(), "a".into(), s(1))]).unwrap();
        assert!(matches!(
            reduce_to_t_star(&alg, &form),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn cyclic_completion_is_consistent() {
        let h = SuperSpace::new(vec!["a"], vec!["b", "c"]).unwrap();
        let mut omega = CocycleTensor::empty(h, Parity::Even);
        // (a, b, c): orbit of size 3 with odd entries involved.
        omega.set_cyclic(0, 1, 2, s(2)).unwrap();
        assert!(omega.is_cyclic());
        // An even-total-parity triple is required.
        assert!(omega.set(0, 0, 1, s(1)).is_err());
    }
}
