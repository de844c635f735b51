//! Levi-Civita product pairs, curvature tensors and flatness.
//!
//! For a pseudo-Euclidean superalgebra `(A, *, <,>)` there is a unique pair
//! of products `(star, circ)` with
//!
//! * torsion:        `u*v = u star v + (-1)^{|u||v|} v circ u`
//! * compatibility:  `<u star v, w> = (-1)^{|u||v|} <v, u circ w>`
//!
//! `star` is solved from the Gram system
//! `2<u star v, w> = <uv,w> - (-1)^{|u||v|+|w||u|}<vw,u> + (-1)^{|v||w|+|u||w|}<wu,v>`
//! and `circ` is derived from `star` through the adjoint, which makes
//! compatibility hold by construction.

use crate::algebra::{
    CheckReport, Counterexample, DiSuperAlgebra, IdentityKind, ProductTensor, Side, SideValue,
    SuperAlgebra,
};
use crate::bilinear::BilinearForm;
use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::{koszul, supercommutator, LinearMap, SuperSpace, Vector};

/// The unique torsion-free compatible product pair of a pseudo-Euclidean
/// superalgebra.
#[derive(Clone, Debug)]
pub struct LeviCivitaPair {
    algebra: SuperAlgebra,
    form: BilinearForm,
    star: SuperAlgebra,
    circ: SuperAlgebra,
}

impl LeviCivitaPair {
    pub fn algebra(&self) -> &SuperAlgebra {
        &self.algebra
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn space(&self) -> &SuperSpace {
        self.algebra.space()
    }

    pub fn star(&self) -> &SuperAlgebra {
        &self.star
    }

    pub fn circ(&self) -> &SuperAlgebra {
        &self.circ
    }

    pub fn as_di_algebra(&self) -> DiSuperAlgebra {
        DiSuperAlgebra::new(
            self.space().clone(),
            self.star.product().clone(),
            self.circ.product().clone(),
        )
        .expect("pair tensors are parity compatible")
    }

    pub fn left_star(&self, u: &Vector) -> LinearMap {
        self.star
            .multiplication_operator(Side::Left, u)
            .expect("homogeneous vector")
    }

    pub fn left_circ(&self, u: &Vector) -> LinearMap {
        self.circ
            .multiplication_operator(Side::Left, u)
            .expect("homogeneous vector")
    }
}

/// Solves for the Levi-Civita pair of `(alg, form)`.
pub fn levi_civita(alg: &SuperAlgebra, form: &BilinearForm) -> Result<LeviCivitaPair, Error> {
    if alg.space() != form.space() {
        return Err(Error::SpaceMismatch);
    }
    let space = alg.space().clone();
    let n = space.dim();
    let p = |i: usize| space.parity(i);
    let half = Scalar::half();

    let mut star = ProductTensor::new();
    for i in 0..n {
        for j in 0..n {
            let uv = alg.basis_product(i, j);
            let rhs: Vec<Scalar> = (0..n)
                .map(|k| {
                    let w = space.basis_vector(k);
                    let t1 = form.eval(&uv, &w).expect("same space");
                    let t2 = form
                        .eval(&alg.basis_product(j, k), &space.basis_vector(i))
                        .expect("same space");
                    let t3 = form
                        .eval(&alg.basis_product(k, i), &space.basis_vector(j))
                        .expect("same space");
                    let s2 = &koszul(p(i), p(j)) * &koszul(p(k), p(i));
                    let s3 = &koszul(p(j), p(k)) * &koszul(p(i), p(k));
                    &(&(&t1 - &(&s2 * &t2)) + &(&s3 * &t3)) * &half
                })
                .collect();
            let x = form.solve_against(&rhs);
            for (k, c) in x.iter() {
                star.set(i, j, k, c.clone());
            }
        }
    }
    let star = SuperAlgebra::new(space.clone(), star)?;

    // circ is determined by L^circ_u = (L^star_u)^*.
    let mut circ = ProductTensor::new();
    for i in 0..n {
        let lc = form.adjoint(&star.left_mul(i))?;
        for j in 0..n {
            for (k, c) in lc.image_of_basis(j).iter() {
                circ.set(i, j, k, c.clone());
            }
        }
    }
    let circ = SuperAlgebra::new(space, circ)?;

    let pair = LeviCivitaPair {
        algebra: alg.clone(),
        form: form.clone(),
        star,
        circ,
    };
    let check = verify_pair(alg, form, pair.star.product(), pair.circ.product())?;
    if !check.ok() {
        return Err(Error::Internal(format!(
            "solved Levi-Civita pair fails its defining identities: {}",
            check.first_description().unwrap_or_default()
        )));
    }
    Ok(pair)
}

/// Outcome of checking candidate `(star, circ)` tables against torsion and
/// compatibility. Every violating tuple is reported, in canonical order.
#[derive(Clone, Debug, Default)]
pub struct PairReport {
    pub torsion_violations: Vec<Counterexample>,
    pub compatibility_violations: Vec<Counterexample>,
}

impl PairReport {
    pub fn ok(&self) -> bool {
        self.torsion_violations.is_empty() && self.compatibility_violations.is_empty()
    }

    pub fn first_description(&self) -> Option<String> {
        self.torsion_violations
            .first()
            .or(self.compatibility_violations.first())
            .map(Counterexample::describe)
    }
}

/// Checks torsion on all basis pairs and compatibility on all basis triples.
pub fn verify_pair(
    alg: &SuperAlgebra,
    form: &BilinearForm,
    star: &ProductTensor,
    circ: &ProductTensor,
) -> Result<PairReport, Error> {
    if alg.space() != form.space() {
        return Err(Error::SpaceMismatch);
    }
    let space = alg.space().clone();
    let star = SuperAlgebra::new(space.clone(), star.clone())?;
    let circ = SuperAlgebra::new(space.clone(), circ.clone())?;
    let n = space.dim();
    let p = |i: usize| space.parity(i);
    let mut report = PairReport::default();

    for i in 0..n {
        for j in 0..n {
            let lhs = alg.basis_product(i, j);
            let rhs = star
                .basis_product(i, j)
                .add(&circ.basis_product(j, i).scale(&koszul(p(i), p(j))));
            if lhs != rhs {
                report.torsion_violations.push(Counterexample {
                    tuple: vec![space.label(i).to_string(), space.label(j).to_string()],
                    clause: Some("torsion".into()),
                    lhs: SideValue::Vector(lhs),
                    rhs: SideValue::Vector(rhs),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = form.eval(&star.basis_product(i, j), &space.basis_vector(k))?;
                let rhs = &koszul(p(i), p(j))
                    * &form.eval(&space.basis_vector(j), &circ.basis_product(i, k))?;
                if lhs != rhs {
                    report.compatibility_violations.push(Counterexample {
                        tuple: vec![
                            space.label(i).to_string(),
                            space.label(j).to_string(),
                            space.label(k).to_string(),
                        ],
                        clause: Some("compatibility".into()),
                        lhs: SideValue::Scalar(lhs),
                        rhs: SideValue::Scalar(rhs),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// The three curvature tensors of a pair, one linear map per basis pair.
#[derive(Clone, Debug)]
pub struct CurvatureTensors {
    space: SuperSpace,
    k1: Vec<LinearMap>,
    k2: Vec<LinearMap>,
    k3: Vec<LinearMap>,
}

impl CurvatureTensors {
    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.space.dim() + j
    }

    pub fn k1(&self, i: usize, j: usize) -> &LinearMap {
        &self.k1[self.idx(i, j)]
    }

    pub fn k2(&self, i: usize, j: usize) -> &LinearMap {
        &self.k2[self.idx(i, j)]
    }

    pub fn k3(&self, i: usize, j: usize) -> &LinearMap {
        &self.k3[self.idx(i, j)]
    }

    /// The first nonzero tensor entry `(name, i, j)` in canonical order.
    pub fn first_nonzero(&self) -> Option<(&'static str, usize, usize)> {
        let n = self.space.dim();
        for i in 0..n {
            for j in 0..n {
                for (name, t) in [("K1", &self.k1), ("K2", &self.k2), ("K3", &self.k3)] {
                    if !t[i * n + j].is_zero() {
                        return Some((name, i, j));
                    }
                }
            }
        }
        None
    }

    pub fn all_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }
}

/// Computes `K1, K2, K3` of the pair over all basis pairs:
///
/// * `K1(u,v) = L*_{uv} - [L*_u, L*_v]`
/// * `K2(u,v) = -Lo_{uv} + L*_u Lo_v + (-1)^{|u||v|} Lo_v Lo_u`
/// * `K3(u,v) = Lo_{uv} - [L*_u, Lo_v]`
pub fn curvature(pair: &LeviCivitaPair) -> CurvatureTensors {
    let space = pair.space().clone();
    let n = space.dim();
    let alg = pair.algebra();
    let ls: Vec<LinearMap> = (0..n).map(|i| pair.star.left_mul(i)).collect();
    let lc: Vec<LinearMap> = (0..n).map(|i| pair.circ.left_mul(i)).collect();

    let mut k1 = Vec::with_capacity(n * n);
    let mut k2 = Vec::with_capacity(n * n);
    let mut k3 = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let uv = alg.basis_product(i, j);
            let ls_uv = pair
                .star
                .multiplication_operator(Side::Left, &uv)
                .expect("basis products are homogeneous");
            let lc_uv = pair
                .circ
                .multiplication_operator(Side::Left, &uv)
                .expect("basis products are homogeneous");
            let sign = koszul(space.parity(i), space.parity(j));
            k1.push(ls_uv.sub(&supercommutator(&ls[i], &ls[j])));
            k2.push(
                lc_uv
                    .neg()
                    .add(&ls[i].compose(&lc[j]))
                    .add(&lc[j].compose(&lc[i]).scale(&sign)),
            );
            k3.push(
                lc_uv
                    .sub(&ls[i].compose(&lc[j]))
                    .add(&lc[j].compose(&ls[i]).scale(&sign)),
            );
        }
    }
    CurvatureTensors { space, k1, k2, k3 }
}

/// Flatness verdict for a pseudo-Euclidean left Leibniz superalgebra.
///
/// Two independent routes are evaluated: vanishing of the curvature tensors,
/// and the pre-left-Leibniz identities on the Levi-Civita pair. They must
/// agree; a disagreement is reported as an internal error.
pub fn is_flat(alg: &SuperAlgebra, form: &BilinearForm) -> Result<CheckReport, Error> {
    let leibniz = alg.check(IdentityKind::LeftLeibniz)?;
    if !leibniz.holds {
        return Err(Error::NotLeftLeibniz(
            leibniz.counterexample.map(|c| c.describe()).unwrap_or_default(),
        ));
    }
    let pair = levi_civita(alg, form)?;
    flatness_of_pair(&pair)
}

/// The curvature-route flatness verdict of an already-solved pair, with the
/// pre-left-Leibniz route as a cross-check. Does not require the underlying
/// product to be Leibniz.
pub fn flatness_of_pair(pair: &LeviCivitaPair) -> Result<CheckReport, Error> {
    let tensors = curvature(pair);
    let space = pair.space();
    let via_curvature = match tensors.first_nonzero() {
        None => CheckReport::pass(),
        Some((name, i, j)) => {
            let map = match name {
                "K1" => tensors.k1(i, j),
                "K2" => tensors.k2(i, j),
                _ => tensors.k3(i, j),
            };
            CheckReport::fail(Counterexample {
                tuple: vec![space.label(i).to_string(), space.label(j).to_string()],
                clause: Some(name.into()),
                lhs: SideValue::Map(map.clone()),
                rhs: SideValue::Map(LinearMap::zero(space.clone(), space.clone())),
            })
        }
    };
    let via_pair = pair.as_di_algebra().check(IdentityKind::PreLeftLeibniz)?;
    if via_curvature.holds != via_pair.holds {
        return Err(Error::Internal(format!(
            "curvature route says flat={}, pre-left-Leibniz route says flat={}",
            via_curvature.holds, via_pair.holds
        )));
    }
    Ok(via_curvature)
}

/// One family of an operator-identity condition list.
#[derive(Clone, Debug)]
pub struct ConditionFamily {
    pub name: String,
    pub first_violation: Option<Counterexample>,
}

impl ConditionFamily {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Report of the four operator-identity families equivalent to flatness.
#[derive(Clone, Debug)]
pub struct FlatnessConditions {
    pub families: Vec<ConditionFamily>,
    pub holds: bool,
}

/// Evaluates the operator identities
/// `L*_{uv} = [L*_u, L*_v]` and
/// `L*_u L*_v = -L*_u Lo_v = -Lo_u L*_v = Lo_u Lo_v`
/// over all basis pairs. The verdict coincides with the curvature verdict.
pub fn flatness_conditions(pair: &LeviCivitaPair) -> Result<FlatnessConditions, Error> {
    let space = pair.space().clone();
    let n = space.dim();
    let alg = pair.algebra();
    let ls: Vec<LinearMap> = (0..n).map(|i| pair.star.left_mul(i)).collect();
    let lc: Vec<LinearMap> = (0..n).map(|i| pair.circ.left_mul(i)).collect();

    let mut families: Vec<ConditionFamily> = [
        "Lstar(u.v) = [Lstar_u, Lstar_v]",
        "Lstar_u Lstar_v = -Lstar_u Lcirc_v",
        "Lstar_u Lstar_v = -Lcirc_u Lstar_v",
        "Lstar_u Lstar_v = Lcirc_u Lcirc_v",
    ]
    .into_iter()
    .map(|name| ConditionFamily {
        name: name.to_string(),
        first_violation: None,
    })
    .collect();

    for i in 0..n {
        for j in 0..n {
            let ss = ls[i].compose(&ls[j]);
            let ls_uv = pair
                .star
                .multiplication_operator(Side::Left, &alg.basis_product(i, j))
                .expect("homogeneous");
            let pairs = [
                (0usize, ls_uv, supercommutator(&ls[i], &ls[j])),
                (1, ss.clone(), ls[i].compose(&lc[j]).neg()),
                (2, ss.clone(), lc[i].compose(&ls[j]).neg()),
                (3, ss, lc[i].compose(&lc[j])),
            ];
            for (f, lhs, rhs) in pairs {
                if families[f].first_violation.is_none() && lhs != rhs {
                    families[f].first_violation = Some(Counterexample {
                        tuple: vec![space.label(i).to_string(), space.label(j).to_string()],
                        clause: Some(families[f].name.clone()),
                        lhs: SideValue::Map(lhs),
                        rhs: SideValue::Map(rhs),
                    });
                }
            }
        }
    }
    let holds = families.iter().all(ConditionFamily::holds);
    let flat = flatness_of_pair(pair)?.holds;
    if holds != flat {
        return Err(Error::Internal(format!(
            "condition list says flat={holds}, curvature says flat={flat}"
        )));
    }
    Ok(FlatnessConditions { families, holds })
}

/// The Bianchi-type triple identity
/// `(uv)w - u(vw) + (-1)^{|u||v|} v(uw)
///    = K1(u,v)w + (-1)^{|u||v|+|u||w|} K2(v,w)u + (-1)^{|v||w|} K3(u,w)v`.
///
/// It holds for every pseudo-Euclidean superalgebra, flat or not, which
/// makes it a strong consistency check on the curvature signs.
pub fn bianchi_identity(alg: &SuperAlgebra, form: &BilinearForm) -> Result<CheckReport, Error> {
    let pair = levi_civita(alg, form)?;
    let tensors = curvature(&pair);
    let space = alg.space().clone();
    let n = space.dim();
    let p = |i: usize| space.parity(i);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (u, v, w) = (
                    space.basis_vector(i),
                    space.basis_vector(j),
                    space.basis_vector(k),
                );
                let uv = alg.basis_product(i, j);
                let vw = alg.basis_product(j, k);
                let uw = alg.basis_product(i, k);
                let lhs = alg
                    .evaluate(&uv, &w)?
                    .sub(&alg.evaluate(&u, &vw)?)
                    .add(&alg.evaluate(&v, &uw)?.scale(&koszul(p(i), p(j))));
                let rhs = tensors
                    .k1(i, j)
                    .apply(&w)?
                    .add(
                        &tensors
                            .k2(j, k)
                            .apply(&u)?
                            .scale(&(&koszul(p(i), p(j)) * &koszul(p(i), p(k)))),
                    )
                    .add(&tensors.k3(i, k).apply(&v)?.scale(&koszul(p(j), p(k))));
                if lhs != rhs {
                    return Ok(CheckReport::fail(Counterexample {
                        tuple: vec![
                            space.label(i).to_string(),
                            space.label(j).to_string(),
                            space.label(k).to_string(),
                        ],
                        clause: Some("bianchi".into()),
                        lhs: SideValue::Vector(lhs),
                        rhs: SideValue::Vector(rhs),
                    }));
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

/// Report of the decomposition conditions: the bracket part must be a flat
/// Lie superalgebra and the mixed left multiplications of the two split
/// Levi-Civita products must vanish.
#[derive(Clone, Debug)]
pub struct CharaReport {
    pub minus_is_lie: bool,
    pub minus_flat: bool,
    pub families: Vec<ConditionFamily>,
    pub holds: bool,
}

/// Splits the product into bracket and symmetric parts, solves their own
/// Levi-Civita products `rtri` (of the bracket) and `ltri` (of the symmetric
/// part) and checks
/// `Lltri_u Lltri_v = Lltri_u Lrtri_v = Lrtri_u Lltri_v = 0` together with
/// `Lrtri_{{u,v}} = Lltri_{{u,v}} = Lltri_{[u,v]} = 0` and flatness of the
/// bracket part. The conjunction agrees with the flatness of the input.
pub fn chara_conditions(alg: &SuperAlgebra, form: &BilinearForm) -> Result<CharaReport, Error> {
    let leibniz = alg.check(IdentityKind::LeftLeibniz)?;
    if !leibniz.holds {
        return Err(Error::NotLeftLeibniz(
            leibniz.counterexample.map(|c| c.describe()).unwrap_or_default(),
        ));
    }
    let space = alg.space().clone();
    let n = space.dim();
    let (minus, plus) = alg.polarization();
    let minus_is_lie = minus.check(IdentityKind::Lie)?.holds;

    let pair_minus = levi_civita(&minus, form)?;
    let pair_plus = levi_civita(&plus, form)?;
    // Internal consistency: the split Levi-Civita stars sum to the full one.
    let pair_full = levi_civita(alg, form)?;
    for i in 0..n {
        for j in 0..n {
            let sum = pair_minus
                .star()
                .basis_product(i, j)
                .add(&pair_plus.star().basis_product(i, j));
            if sum != pair_full.star().basis_product(i, j) {
                return Err(Error::Internal(
                    "split Levi-Civita products do not sum to the full one".into(),
                ));
            }
        }
    }
    let minus_flat = flatness_of_pair(&pair_minus)?.holds;

    let rtri: Vec<LinearMap> = (0..n).map(|i| pair_minus.star().left_mul(i)).collect();
    let ltri: Vec<LinearMap> = (0..n).map(|i| pair_plus.star().left_mul(i)).collect();

    let mut families: Vec<ConditionFamily> = [
        "Lltri_u Lltri_v = 0",
        "Lltri_u Lrtri_v = 0",
        "Lrtri_u Lltri_v = 0",
        "Lrtri_{{u,v}} = 0",
        "Lltri_{{u,v}} = 0",
        "Lltri_{[u,v]} = 0",
    ]
    .into_iter()
    .map(|name| ConditionFamily {
        name: name.to_string(),
        first_violation: None,
    })
    .collect();

    let zero_map = LinearMap::zero(space.clone(), space.clone());
    for i in 0..n {
        for j in 0..n {
            let sym = plus.basis_product(i, j);
            let bra = minus.basis_product(i, j);
            let checks = [
                (0usize, ltri[i].compose(&ltri[j])),
                (1, ltri[i].compose(&rtri[j])),
                (2, rtri[i].compose(&ltri[j])),
                (
                    3,
                    pair_minus
                        .star()
                        .multiplication_operator(Side::Left, &sym)
                        .expect("homogeneous"),
                ),
                (
                    4,
                    pair_plus
                        .star()
                        .multiplication_operator(Side::Left, &sym)
                        .expect("homogeneous"),
                ),
                (
                    5,
                    pair_plus
                        .star()
                        .multiplication_operator(Side::Left, &bra)
                        .expect("homogeneous"),
                ),
            ];
            for (f, lhs) in checks {
                if families[f].first_violation.is_none() && !lhs.is_zero() {
                    families[f].first_violation = Some(Counterexample {
                        tuple: vec![space.label(i).to_string(), space.label(j).to_string()],
                        clause: Some(families[f].name.clone()),
                        lhs: SideValue::Map(lhs),
                        rhs: SideValue::Map(zero_map.clone()),
                    });
                }
            }
        }
    }

    let holds = minus_is_lie && minus_flat && families.iter().all(ConditionFamily::holds);
    let flat = flatness_of_pair(&pair_full)?.holds;
    if holds != flat {
        return Err(Error::Internal(format!(
            "decomposition conditions say flat={holds} but curvature says flat={flat}"
        )));
    }
    Ok(CharaReport {
        minus_is_lie,
        minus_flat,
        families,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::build_form;
    use crate::fixtures;
    use crate::space::Parity;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// The quadratic shortcut: for an invariant form the pair satisfies
    /// `u star v = (-1)^{|u||v|} v circ u = (uv)/2` exactly.
    fn assert_quadratic_shortcut(alg: &SuperAlgebra, form: &BilinearForm) {
        let pair = levi_civita(alg, form).unwrap();
        let sp = alg.space();
        let half = Scalar::half();
        for i in sp.indices() {
            for j in sp.indices() {
                let uv_half = alg.basis_product(i, j).scale(&half);
                assert_eq!(pair.star().basis_product(i, j), uv_half, "star at ({i},{j})");
                let transported = pair
                    .circ()
                    .basis_product(j, i)
                    .scale(&koszul(sp.parity(i), sp.parity(j)));
                assert_eq!(transported, uv_half, "circ at ({i},{j})");
            }
        }
    }

    #[test]
    fn abelian_pair_is_zero_and_flat() {
        let sp = SuperSpace::new(vec!["a"], vec!["b"]).unwrap();
        let alg = SuperAlgebra::zero(sp.clone());
        let form = build_form(
            &sp,
            Parity::Odd,
            &[("a".to_string(), "b".to_string(), s(1))],
        )
        .unwrap();
        let pair = levi_civita(&alg, &form).unwrap();
        assert!(pair.star().product().is_zero());
        assert!(pair.circ().product().is_zero());
        assert!(is_flat(&alg, &form).unwrap().holds);
        assert!(curvature(&pair).all_zero());
        assert!(flatness_conditions(&pair).unwrap().holds);
    }

    #[test]
    fn odd_2_2_solver_matches_quadratic_shortcut() {
        let q = fixtures::odd_quadratic_2_2(&s(1));
        assert_quadratic_shortcut(&q.algebra, &q.form);
        let pair = levi_civita(&q.algebra, &q.form).unwrap();
        let sp = q.algebra.space().clone();
        // e2 star e2 = e1/2 and f1 star f1 = e1/2.
        let e1 = sp.index_of("e1").unwrap();
        let e2 = sp.index_of("e2").unwrap();
        let f1 = sp.index_of("f1").unwrap();
        assert_eq!(pair.star().product().get(e2, e2, e1), Scalar::half());
        assert_eq!(pair.star().product().get(f1, f1, e1), Scalar::half());
        // The Koszul flip puts -e1/2 in the raw circ table at (f1, f1).
        assert_eq!(pair.circ().product().get(f1, f1, e1), -Scalar::half());
        assert!(is_flat(&q.algebra, &q.form).unwrap().holds);
    }

    #[test]
    fn even_2_2_and_2_4_are_flat() {
        for alpha in [s(1), s(3)] {
            let q = fixtures::even_quadratic_2_2(&alpha);
            assert_quadratic_shortcut(&q.algebra, &q.form);
            assert!(is_flat(&q.algebra, &q.form).unwrap().holds);
        }
        let q = fixtures::even_quadratic_2_4(&s(1), &s(1));
        assert_quadratic_shortcut(&q.algebra, &q.form);
        assert!(is_flat(&q.algebra, &q.form).unwrap().holds);
    }

    #[test]
    fn sl2_is_not_flat_and_star_is_minus_circ() {
        let f = fixtures::sl2();
        let pair = levi_civita(&f.algebra, &f.form).unwrap();
        // super anti-commutative product: star = -circ.
        let sp = f.algebra.space();
        for i in sp.indices() {
            for j in sp.indices() {
                assert_eq!(
                    pair.star().basis_product(i, j),
                    pair.circ().basis_product(i, j).neg()
                );
            }
        }
        let report = is_flat(&f.algebra, &f.form).unwrap();
        assert!(!report.holds);
        let conds = flatness_conditions(&pair).unwrap();
        assert!(!conds.holds);
        assert!(conds.families.iter().any(|f| f.first_violation.is_some()));
    }

    #[test]
    fn commutative_part_has_star_equal_circ() {
        let q = fixtures::even_quadratic_2_2(&s(2));
        let (_, plus) = q.algebra.polarization();
        let pair = levi_civita(&plus, &q.form).unwrap();
        assert_eq!(pair.star().product(), pair.circ().product());
    }

    #[test]
    fn published_4_2_tables_fail_and_solver_output_passes() {
        let f = fixtures::flat_noninvariant_4_2();
        let (star, circ) = fixtures::flat_noninvariant_4_2_printed_pair();
        let report = verify_pair(&f.algebra, &f.form, &star, &circ).unwrap();
        assert!(!report.ok());
        assert!(!report.compatibility_violations.is_empty());
        let compat_tuples: Vec<&Vec<String>> = report
            .compatibility_violations
            .iter()
            .map(|c| &c.tuple)
            .collect();
        assert!(
            compat_tuples.contains(&&vec!["e1".to_string(), "f2".to_string(), "f2".to_string()]),
            "expected the (e1, f2, f2) compatibility violation, got {compat_tuples:?}"
        );
        let torsion_tuples: Vec<&Vec<String>> =
            report.torsion_violations.iter().map(|c| &c.tuple).collect();
        assert!(torsion_tuples.contains(&&vec!["e4".to_string(), "e4".to_string()]));

        let pair = levi_civita(&f.algebra, &f.form).unwrap();
        let own = verify_pair(&f.algebra, &f.form, pair.star().product(), pair.circ().product())
            .unwrap();
        assert!(own.ok());
    }

    #[test]
    fn published_2_2_circ_table_violates_torsion() {
        let q = fixtures::odd_quadratic_2_2(&s(1));
        let (star, circ) = fixtures::odd_quadratic_2_2_printed_pair();
        let report = verify_pair(&q.algebra, &q.form, &star, &circ).unwrap();
        assert_eq!(report.torsion_violations.len(), 1);
        assert_eq!(report.torsion_violations[0].tuple, vec!["f1", "f1"]);
    }

    #[test]
    fn star_equals_product_with_zero_circ_breaks_compatibility() {
        let q = fixtures::odd_quadratic_2_2(&s(1));
        let report = verify_pair(
            &q.algebra,
            &q.form,
            q.algebra.product(),
            &ProductTensor::new(),
        )
        .unwrap();
        assert!(report.torsion_violations.is_empty());
        assert!(!report.compatibility_violations.is_empty());
    }

    #[test]
    fn uniqueness_perturbed_pair_fails() {
        let q = fixtures::even_quadratic_2_2(&s(1));
        let pair = levi_civita(&q.algebra, &q.form).unwrap();
        let mut star = pair.star().product().clone();
        let cur = star.get(0, 0, 0);
        star.set(0, 0, 0, cur + s(1));
        let report = verify_pair(&q.algebra, &q.form, &star, pair.circ().product()).unwrap();
        assert!(!report.ok());
    }

    #[test]
    fn bianchi_holds_on_flat_and_non_flat_inputs() {
        let q = fixtures::odd_quadratic_2_2(&s(1));
        assert!(bianchi_identity(&q.algebra, &q.form).unwrap().holds);
        let f = fixtures::sl2();
        assert!(bianchi_identity(&f.algebra, &f.form).unwrap().holds);
        // Not even Leibniz: the identity is a pure torsion consequence.
        let g = fixtures::flat_noninvariant_4_2();
        assert!(bianchi_identity(&g.algebra, &g.form).unwrap().holds);
    }

    #[test]
    fn chara_conditions_match_flatness() {
        let q = fixtures::odd_quadratic_2_2(&s(1));
        let rep = chara_conditions(&q.algebra, &q.form).unwrap();
        assert!(rep.holds && rep.minus_is_lie && rep.minus_flat);

        let f = fixtures::sl2();
        let rep = chara_conditions(&f.algebra, &f.form).unwrap();
        assert!(!rep.holds);
        // The symmetric part of a Lie algebra is zero, so the failure sits in
        // the bracket part.
        assert!(!rep.minus_flat);
    }

    #[test]
    fn idempotent_line_fails_symmetric_conditions() {
        // 1-dimensional e*e = e with <e,e> = 1: commutative, so its
        // Levi-Civita star is e*e/2 and the first mixed-condition family
        // fails; it is not left Leibniz, so chara rejects it upfront.
        let sp = SuperSpace::new(vec!["e"], vec![]).unwrap();
        let mut t = ProductTensor::new();
        t.set(0, 0, 0, s(1));
        let alg = SuperAlgebra::new(sp.clone(), t).unwrap();
        let form = build_form(&sp, Parity::Even, &[("e".into(), "e".into(), s(1))]).unwrap();
        assert!(matches!(
            chara_conditions(&alg, &form),
            Err(Error::NotLeftLeibniz(_))
        ));
        let pair = levi_civita(&alg, &form).unwrap();
        let conds = flatness_conditions(&pair).unwrap();
        assert!(!conds.holds);
    }

    #[test]
    fn is_flat_requires_left_leibniz() {
        let f = fixtures::flat_noninvariant_4_2();
        assert!(matches!(
            is_flat(&f.algebra, &f.form),
            Err(Error::NotLeftLeibniz(_))
        ));
    }
}
