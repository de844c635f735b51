//! Superalgebras as structure-constant tensors, and graded identity checking.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::{koszul, LinearMap, Parity, SuperSpace, Vector};

/// Sparse structure constants: `basis_i * basis_j = sum_k c[i][j][k] basis_k`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ProductTensor {
    entries: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
}

impl ProductTensor {
    pub fn new() -> Self {
        ProductTensor::default()
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        let cell = self.entries.entry((i, j)).or_default();
        if value.is_zero() {
            cell.remove(&k);
            if cell.is_empty() {
                self.entries.remove(&(i, j));
            }
        } else {
            cell.insert(k, value);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, value: &Scalar) {
        let current = self.get(i, j, k);
        self.set(i, j, k, current + value);
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.entries
            .get(&(i, j))
            .and_then(|c| c.get(&k))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn cell(&self, i: usize, j: usize) -> Option<&BTreeMap<usize, Scalar>> {
        self.entries.get(&(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.entries
            .iter()
            .flat_map(|((i, j), cell)| cell.iter().map(move |(k, v)| (*i, *j, *k, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A superalgebra: a graded space with one bilinear product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperAlgebra {
    space: SuperSpace,
    product: ProductTensor,
}

impl SuperAlgebra {
    /// Validates the parity compatibility `|b_i * b_j| = |b_i| + |b_j|`.
    pub fn new(space: SuperSpace, product: ProductTensor) -> Result<Self, Error> {
        for (i, j, k, v) in product.iter() {
            debug_assert!(!v.is_zero());
            let expect = space.parity(i).plus(space.parity(j));
            if space.parity(k) != expect {
                return Err(Error::ParityViolation(format!(
                    "{} * {} has a {} component {}",
                    space.label(i),
                    space.label(j),
                    space.parity(k),
                    space.label(k)
                )));
            }
        }
        Ok(SuperAlgebra { space, product })
    }

    pub fn zero(space: SuperSpace) -> Self {
        SuperAlgebra {
            space,
            product: ProductTensor::new(),
        }
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn product(&self) -> &ProductTensor {
        &self.product
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let mut out = self.space.zero_vector();
        if let Some(cell) = self.product.cell(i, j) {
            for (k, v) in cell {
                out.set(*k, v.clone());
            }
        }
        out
    }

    /// Bilinear extension of the structure constants.
    pub fn evaluate(&self, x: &Vector, y: &Vector) -> Result<Vector, Error> {
        if x.space() != &self.space || y.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.space.zero_vector();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if let Some(cell) = self.product.cell(i, j) {
                    let ab = a * b;
                    for (k, v) in cell {
                        let nv = out.coord(*k) + v * &ab;
                        out.set(*k, nv);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Left (`v -> u*v`) or right (`v -> (-1)^{|u||v|} v*u`) multiplication by
    /// a homogeneous vector, returned as a map of degree `|u|`.
    pub fn multiplication_operator(&self, side: Side, u: &Vector) -> Result<LinearMap, Error> {
        if u.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        if !u.is_homogeneous() {
            return Err(Error::NotHomogeneous("multiplication argument"));
        }
        let du = u.parity().unwrap_or(Parity::Even);
        let images: Result<Vec<Vector>, Error> = self
            .space
            .indices()
            .map(|j| {
                let bj = self.space.basis_vector(j);
                match side {
                    Side::Left => self.evaluate(u, &bj),
                    Side::Right => Ok(self
                        .evaluate(&bj, u)?
                        .scale(&koszul(du, self.space.parity(j)))),
                }
            })
            .collect();
        let mut map = LinearMap::from_images(&self.space, &self.space, &images?);
        if map.is_zero() {
            map.degree = Some(du);
        }
        debug_assert_eq!(map.degree, Some(du));
        Ok(map)
    }

    pub fn left_mul(&self, i: usize) -> LinearMap {
        self.multiplication_operator(Side::Left, &self.space.basis_vector(i))
            .expect("basis vector is homogeneous")
    }

    pub fn right_mul(&self, i: usize) -> LinearMap {
        self.multiplication_operator(Side::Right, &self.space.basis_vector(i))
            .expect("basis vector is homogeneous")
    }

    /// The opposite product `u *_opp v = (-1)^{|u||v|} v * u`.
    pub fn opposite(&self) -> SuperAlgebra {
        let mut t = ProductTensor::new();
        for (i, j, k, v) in self.product.iter() {
            let sign = koszul(self.space.parity(i), self.space.parity(j));
            t.set(j, i, k, v * &sign);
        }
        SuperAlgebra {
            space: self.space.clone(),
            product: t,
        }
    }

    /// Splits the product into its super-anticommutative bracket
    /// `[u,v] = (u*v - (-1)^{|u||v|} v*u)/2` and supercommutative part
    /// `{u,v} = (u*v + (-1)^{|u||v|} v*u)/2`; their tensors sum back to the
    /// product.
    pub fn polarization(&self) -> (SuperAlgebra, SuperAlgebra) {
        let mut minus = ProductTensor::new();
        let mut plus = ProductTensor::new();
        let half = Scalar::half();
        let n = self.space.dim();
        for i in 0..n {
            for j in 0..n {
                let uv = self.basis_product(i, j);
                let vu = self
                    .basis_product(j, i)
                    .scale(&koszul(self.space.parity(i), self.space.parity(j)));
                for k in 0..n {
                    let m = (&uv.coord(k) - &vu.coord(k)) * &half;
                    let p = (&uv.coord(k) + &vu.coord(k)) * &half;
                    if !m.is_zero() {
                        minus.set(i, j, k, m);
                    }
                    if !p.is_zero() {
                        plus.set(i, j, k, p);
                    }
                }
            }
        }
        (
            SuperAlgebra {
                space: self.space.clone(),
                product: minus,
            },
            SuperAlgebra {
                space: self.space.clone(),
                product: plus,
            },
        )
    }

    pub fn check(&self, kind: IdentityKind) -> Result<CheckReport, Error> {
        check_identity(Subject::Algebra(self), kind)
    }
}

/// Which multiplication operator to form.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// A graded space carrying two products, written `star` and `circ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiSuperAlgebra {
    space: SuperSpace,
    star: ProductTensor,
    circ: ProductTensor,
}

impl DiSuperAlgebra {
    pub fn new(space: SuperSpace, star: ProductTensor, circ: ProductTensor) -> Result<Self, Error> {
        SuperAlgebra::new(space.clone(), star.clone())?;
        SuperAlgebra::new(space.clone(), circ.clone())?;
        Ok(DiSuperAlgebra { space, star, circ })
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn star(&self) -> SuperAlgebra {
        SuperAlgebra {
            space: self.space.clone(),
            product: self.star.clone(),
        }
    }

    pub fn circ(&self) -> SuperAlgebra {
        SuperAlgebra {
            space: self.space.clone(),
            product: self.circ.clone(),
        }
    }

    pub fn star_tensor(&self) -> &ProductTensor {
        &self.star
    }

    pub fn circ_tensor(&self) -> &ProductTensor {
        &self.circ
    }

    /// The mixed product `u * v = u star v + (-1)^{|u||v|} v circ u`.
    pub fn admissible_product(&self) -> SuperAlgebra {
        let mut t = self.star.clone();
        for (i, j, k, v) in self.circ.iter() {
            let sign = koszul(self.space.parity(i), self.space.parity(j));
            t.add_to(j, i, k, &(v * &sign));
        }
        SuperAlgebra::new(self.space.clone(), t).expect("mixed product is parity compatible")
    }

    pub fn check(&self, kind: IdentityKind) -> Result<CheckReport, Error> {
        check_identity(Subject::DiAlgebra(self), kind)
    }
}

/// The multilinear identities the checker knows about.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub enum IdentityKind {
    LeftLeibniz,
    RightLeibniz,
    SymmetricLeibniz,
    SuperAnticommutative,
    SuperCommutative,
    Lie,
    LeftSymmetric,
    PreLeftLeibniz,
    PreRightLeibniz,
    TwoStepNilpotent,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 10] = [
        IdentityKind::LeftLeibniz,
        IdentityKind::RightLeibniz,
        IdentityKind::SymmetricLeibniz,
        IdentityKind::SuperAnticommutative,
        IdentityKind::SuperCommutative,
        IdentityKind::Lie,
        IdentityKind::LeftSymmetric,
        IdentityKind::PreLeftLeibniz,
        IdentityKind::PreRightLeibniz,
        IdentityKind::TwoStepNilpotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::LeftLeibniz => "left-leibniz",
            IdentityKind::RightLeibniz => "right-leibniz",
            IdentityKind::SymmetricLeibniz => "symmetric-leibniz",
            IdentityKind::SuperAnticommutative => "super-anticommutative",
            IdentityKind::SuperCommutative => "super-commutative",
            IdentityKind::Lie => "lie",
            IdentityKind::LeftSymmetric => "left-symmetric",
            IdentityKind::PreLeftLeibniz => "pre-left-leibniz",
            IdentityKind::PreRightLeibniz => "pre-right-leibniz",
            IdentityKind::TwoStepNilpotent => "two-step-nilpotent",
        }
    }

    pub fn from_name(name: &str) -> Option<IdentityKind> {
        IdentityKind::ALL.iter().copied().find(|k| k.name() == name)
    }

    fn needs_two_products(self) -> bool {
        matches!(self, IdentityKind::PreLeftLeibniz | IdentityKind::PreRightLeibniz)
    }
}

/// One side of a failed identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SideValue {
    Scalar(Scalar),
    Vector(Vector),
    Map(LinearMap),
}

impl fmt::Display for SideValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideValue::Scalar(s) => write!(f, "{s}"),
            SideValue::Vector(v) => write!(f, "{v:?}"),
            SideValue::Map(m) => write!(f, "{:?}", m.matrix),
        }
    }
}

/// The first violating tuple of an identity check, with both evaluated sides.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    pub tuple: Vec<String>,
    /// Which clause of a compound identity failed, when there are several.
    pub clause: Option<String>,
    pub lhs: SideValue,
    pub rhs: SideValue,
}

impl Counterexample {
    pub fn describe(&self) -> String {
        let clause = self.clause.as_deref().map(|c| format!(" [{c}]")).unwrap_or_default();
        format!(
            "({}){}: lhs = {}, rhs = {}",
            self.tuple.join(", "),
            clause,
            self.lhs,
            self.rhs
        )
    }
}

/// Verdict of an identity or property check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport {
            holds: true,
            counterexample: None,
        }
    }

    pub fn fail(cx: Counterexample) -> Self {
        CheckReport {
            holds: false,
            counterexample: Some(cx),
        }
    }
}

enum Subject<'a> {
    Algebra(&'a SuperAlgebra),
    DiAlgebra(&'a DiSuperAlgebra),
}

/// Exhaustively evaluates the defining identity of `kind` over ordered basis
/// tuples, returning the first violation in lexicographic index order.
fn check_identity(subject: Subject<'_>, kind: IdentityKind) -> Result<CheckReport, Error> {
    match (&subject, kind.needs_two_products()) {
        (Subject::Algebra(_), true) | (Subject::DiAlgebra(_), false) => {
            return Err(Error::InapplicableIdentity(kind.name().to_string()));
        }
        _ => {}
    }
    match subject {
        Subject::Algebra(alg) => check_algebra_identity(alg, kind),
        Subject::DiAlgebra(di) => check_di_identity(di, kind),
    }
}

fn labels(space: &SuperSpace, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|i| space.label(*i).to_string()).collect()
}

fn vector_cx(space: &SuperSpace, idx: &[usize], clause: Option<&str>, lhs: Vector, rhs: Vector) -> Counterexample {
    Counterexample {
        tuple: labels(space, idx),
        clause: clause.map(str::to_string),
        lhs: SideValue::Vector(lhs),
        rhs: SideValue::Vector(rhs),
    }
}

fn check_pairs(
    alg: &SuperAlgebra,
    clause: Option<&str>,
    mut rhs_of: impl FnMut(usize, usize) -> Vector,
) -> Option<Counterexample> {
    let n = alg.space().dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = alg.basis_product(i, j);
            let rhs = rhs_of(i, j);
            if lhs != rhs {
                return Some(vector_cx(alg.space(), &[i, j], clause, lhs, rhs));
            }
        }
    }
    None
}

fn check_algebra_identity(alg: &SuperAlgebra, kind: IdentityKind) -> Result<CheckReport, Error> {
    let space = alg.space().clone();
    let n = space.dim();
    let p = |i: usize| space.parity(i);
    let prod = |x: &Vector, y: &Vector| alg.evaluate(x, y).expect("same space");
    let basis = |i: usize| space.basis_vector(i);

    let report = match kind {
        IdentityKind::SuperAnticommutative => {
            check_pairs(alg, None, |i, j| alg.basis_product(j, i).scale(&-koszul(p(i), p(j))))
        }
        IdentityKind::SuperCommutative => {
            check_pairs(alg, None, |i, j| alg.basis_product(j, i).scale(&koszul(p(i), p(j))))
        }
        IdentityKind::Lie => {
            // A Lie superalgebra is exactly a super-anticommutative left
            // Leibniz superalgebra.
            let anti = check_algebra_identity(alg, IdentityKind::SuperAnticommutative)?;
            if !anti.holds {
                return Ok(anti);
            }
            return check_algebra_identity(alg, IdentityKind::LeftLeibniz);
        }
        IdentityKind::SymmetricLeibniz => {
            let left = check_algebra_identity(alg, IdentityKind::LeftLeibniz)?;
            if !left.holds {
                return Ok(left);
            }
            return check_algebra_identity(alg, IdentityKind::RightLeibniz);
        }
        _ => {
            let mut found = None;
            'outer: for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let (u, v, w) = (basis(i), basis(j), basis(k));
                        let uv = alg.basis_product(i, j);
                        let vw = alg.basis_product(j, k);
                        let fail = match kind {
                            IdentityKind::LeftLeibniz => {
                                // u(vw) = (uv)w + (-1)^{|u||v|} v(uw)
                                let lhs = prod(&u, &vw);
                                let uw = alg.basis_product(i, k);
                                let rhs = prod(&uv, &w).add(&prod(&v, &uw).scale(&koszul(p(i), p(j))));
                                (lhs != rhs).then(|| vector_cx(&space, &[i, j, k], None, lhs, rhs))
                            }
                            IdentityKind::RightLeibniz => {
                                // u(vw) = (uv)w - (-1)^{|v||w|} (uw)v
                                let lhs = prod(&u, &vw);
                                let uw = alg.basis_product(i, k);
                                let rhs = prod(&uv, &w).sub(&prod(&uw, &v).scale(&koszul(p(j), p(k))));
                                (lhs != rhs).then(|| vector_cx(&space, &[i, j, k], None, lhs, rhs))
                            }
                            IdentityKind::LeftSymmetric => {
                                // (u,v,w) = (-1)^{|u||v|}(v,u,w) for the associator.
                                let assoc_uvw = prod(&uv, &w).sub(&prod(&u, &vw));
                                let vu = alg.basis_product(j, i);
                                let uw = alg.basis_product(i, k);
                                let assoc_vuw = prod(&vu, &w).sub(&prod(&v, &uw));
                                let rhs = assoc_vuw.scale(&koszul(p(i), p(j)));
                                (assoc_uvw != rhs)
                                    .then(|| vector_cx(&space, &[i, j, k], None, assoc_uvw, rhs))
                            }
                            IdentityKind::TwoStepNilpotent => {
                                let lhs = prod(&uv, &w);
                                if !lhs.is_zero() {
                                    Some(vector_cx(&space, &[i, j, k], Some("(uv)w = 0"), lhs, space.zero_vector()))
                                } else {
                                    let lhs2 = prod(&u, &vw);
                                    (!lhs2.is_zero()).then(|| {
                                        vector_cx(&space, &[i, j, k], Some("u(vw) = 0"), lhs2, space.zero_vector())
                                    })
                                }
                            }
                            _ => unreachable!("handled above"),
                        };
                        if let Some(cx) = fail {
                            found = Some(cx);
                            break 'outer;
                        }
                    }
                }
            }
            found
        }
    };
    Ok(match report {
        Some(cx) => CheckReport::fail(cx),
        None => CheckReport::pass(),
    })
}

fn check_di_identity(di: &DiSuperAlgebra, kind: IdentityKind) -> Result<CheckReport, Error> {
    let space = di.space().clone();
    let n = space.dim();
    let p = |i: usize| space.parity(i);
    let star = di.star();
    let circ = di.circ();
    let st = |x: &Vector, y: &Vector| star.evaluate(x, y).expect("same space");
    let ci = |x: &Vector, y: &Vector| circ.evaluate(x, y).expect("same space");
    let basis = |i: usize| space.basis_vector(i);

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (u, v, w) = (basis(i), basis(j), basis(k));
                let sgn = koszul(p(i), p(j));
                let checks: Vec<(&str, Vector, Vector)> = match kind {
                    IdentityKind::PreLeftLeibniz => vec![
                        (
                            "id1",
                            st(&star.basis_product(i, j), &w).sub(&st(&u, &star.basis_product(j, k))),
                            st(&circ.basis_product(j, i), &w)
                                .add(&st(&v, &star.basis_product(i, k)))
                                .scale(&-&sgn),
                        ),
                        (
                            "id2",
                            ci(&star.basis_product(i, j), &w).sub(&st(&u, &circ.basis_product(j, k))),
                            ci(&circ.basis_product(j, i), &w)
                                .sub(&ci(&v, &circ.basis_product(i, k)))
                                .scale(&-&sgn),
                        ),
                        (
                            "id3",
                            ci(&u, &circ.basis_product(j, k)),
                            ci(&u, &star.basis_product(j, k)).neg(),
                        ),
                    ],
                    IdentityKind::PreRightLeibniz => vec![
                        (
                            "id4",
                            ci(&star.basis_product(i, j), &w).add(&ci(&u, &circ.basis_product(j, k))),
                            ci(&circ.basis_product(j, i), &w)
                                .sub(&ci(&v, &circ.basis_product(i, k)))
                                .scale(&-&sgn),
                        ),
                        (
                            "id5",
                            st(&star.basis_product(i, j), &w).sub(&st(&u, &star.basis_product(j, k))),
                            st(&circ.basis_product(j, i), &w)
                                .sub(&ci(&v, &star.basis_product(i, k)))
                                .scale(&-&sgn),
                        ),
                        (
                            "id6",
                            st(&u, &star.basis_product(j, k)),
                            st(&u, &circ.basis_product(j, k)).neg(),
                        ),
                    ],
                    _ => unreachable!("guarded by check_identity"),
                };
                for (clause, lhs, rhs) in checks {
                    if lhs != rhs {
                        return Ok(CheckReport::fail(vector_cx(&space, &[i, j, k], Some(clause), lhs, rhs)));
                    }
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn parity_compatibility_enforced() {
        let space = SuperSpace::new(vec!["e1"], vec!["f1"]).unwrap();
        let mut t = ProductTensor::new();
        // e1 * f1 = e1 has even value on an odd pair.
        t.set(0, 1, 0, s(1));
        assert!(matches!(
            SuperAlgebra::new(space, t),
            Err(Error::ParityViolation(_))
        ));
    }

    #[test]
    fn evaluate_is_bilinear_and_matches_tensor() {
        let alg = fixtures::odd_quadratic_2_2(&s(1)).algebra;
        let space = alg.space().clone();
        let e2 = space.basis_vector(1);
        let f1 = space.basis_vector(2);
        let e1 = space.basis_vector(0);
        let f2 = space.basis_vector(3);
        assert_eq!(alg.evaluate(&e2, &e2).unwrap(), e1);
        assert_eq!(alg.evaluate(&e2, &f1).unwrap(), f2);
        let zero = space.zero_vector();
        assert_eq!(alg.evaluate(&zero, &e2).unwrap(), zero);
        // bilinearity on a combination
        let x = e2.scale(&s(3)).add(&f1.scale(&s(2)));
        let got = alg.evaluate(&x, &x).unwrap();
        // (3e2 + 2f1)(3e2 + 2f1) = 9 e1 + 6 f2 + 6 f2 + 4 e1
        let mut want = space.zero_vector();
        want.set(0, s(13));
        want.set(3, s(12));
        assert_eq!(got, want);
    }

    #[test]
    fn multiplication_operators_carry_koszul_sign() {
        let alg = fixtures::odd_quadratic_2_2(&s(1)).algebra;
        let space = alg.space().clone();
        let left = alg
            .multiplication_operator(Side::Left, &space.basis_vector(1))
            .unwrap();
        // e2: f1 -> f2, e2 -> e1, else 0
        assert_eq!(left.image_of_basis(2), space.basis_vector(3));
        assert_eq!(left.image_of_basis(1), space.basis_vector(0));
        assert!(left.image_of_basis(0).is_zero());

        let right = alg
            .multiplication_operator(Side::Right, &space.basis_vector(2))
            .unwrap();
        // R_{f1}: e2 -> f2, f1 -> -e1
        assert_eq!(right.image_of_basis(1), space.basis_vector(3));
        assert_eq!(right.image_of_basis(2), space.basis_vector(0).neg());
        assert_eq!(right.degree, Some(Parity::Odd));

        let mut mixed = space.zero_vector();
        mixed.set(0, s(1));
        mixed.set(2, s(1));
        assert!(alg.multiplication_operator(Side::Left, &mixed).is_err());

        let abelian = SuperAlgebra::zero(space.clone());
        let z = abelian
            .multiplication_operator(Side::Left, &space.basis_vector(0))
            .unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn classify_odd_quadratic_2_2() {
        let alg = fixtures::odd_quadratic_2_2(&s(1)).algebra;
        assert!(alg.check(IdentityKind::LeftLeibniz).unwrap().holds);
        assert!(alg.check(IdentityKind::RightLeibniz).unwrap().holds);
        assert!(alg.check(IdentityKind::SymmetricLeibniz).unwrap().holds);
        assert!(alg.check(IdentityKind::TwoStepNilpotent).unwrap().holds);
        assert!(!alg.check(IdentityKind::Lie).unwrap().holds);
        assert!(!alg.check(IdentityKind::SuperAnticommutative).unwrap().holds);
    }

    #[test]
    fn zero_algebra_passes_everything() {
        let space = SuperSpace::new(vec!["a", "b"], vec!["c"]).unwrap();
        let alg = SuperAlgebra::zero(space);
        for kind in IdentityKind::ALL {
            if kind.needs_two_products() {
                assert!(alg.check(kind).is_err());
            } else {
                assert!(alg.check(kind).unwrap().holds, "{}", kind.name());
            }
        }
    }

    #[test]
    fn one_dimensional_idempotent_fails_left_leibniz_with_counterexample() {
        let space = SuperSpace::new(vec!["e"], vec![]).unwrap();
        let mut t = ProductTensor::new();
        t.set(0, 0, 0, s(1));
        let alg = SuperAlgebra::new(space.clone(), t).unwrap();
        let report = alg.check(IdentityKind::LeftLeibniz).unwrap();
        assert!(!report.holds);
        let cx = report.counterexample.unwrap();
        assert_eq!(cx.tuple, vec!["e", "e", "e"]);
        // lhs = e(ee) = e, rhs = (ee)e + e(ee) = 2e
        assert_eq!(cx.lhs, SideValue::Vector(space.basis_vector(0)));
        assert_eq!(cx.rhs, SideValue::Vector(space.basis_vector(0).scale(&s(2))));
    }

    #[test]
    fn opposite_swaps_left_and_right_leibniz() {
        let alg = fixtures::odd_quadratic_2_2(&s(2)).algebra;
        let opp = alg.opposite();
        assert!(alg.check(IdentityKind::LeftLeibniz).unwrap().holds);
        assert!(opp.check(IdentityKind::RightLeibniz).unwrap().holds);
        assert_eq!(opp.opposite(), alg);
    }

    #[test]
    fn polarization_reconstructs_product() {
        let alg = fixtures::even_quadratic_2_2(&s(3)).algebra;
        let (minus, plus) = alg.polarization();
        assert!(minus.check(IdentityKind::SuperAnticommutative).unwrap().holds);
        assert!(plus.check(IdentityKind::SuperCommutative).unwrap().holds);
        let mut sum = minus.product().clone();
        for (i, j, k, v) in plus.product().iter() {
            sum.add_to(i, j, k, v);
        }
        assert_eq!(&sum, alg.product());
    }

    #[test]
    fn polarization_of_anticommutative_is_identity() {
        let alg = fixtures::sl2().algebra;
        let (minus, plus) = alg.polarization();
        assert_eq!(minus.product(), alg.product());
        assert!(plus.product().is_zero());
    }

    #[test]
    fn admissible_product_of_pre_left_leibniz_is_left_leibniz() {
        // star arbitrary, circ = -star gives the supercommutator-free product.
        let alg = fixtures::even_quadratic_2_2(&s(1)).algebra;
        let star = alg.product().clone();
        let mut circ = ProductTensor::new();
        for (i, j, k, v) in star.iter() {
            circ.set(i, j, k, -v);
        }
        let di = DiSuperAlgebra::new(alg.space().clone(), star.clone(), circ).unwrap();
        let mixed = di.admissible_product();
        let space = alg.space();
        for i in space.indices() {
            for j in space.indices() {
                let expect = alg
                    .basis_product(i, j)
                    .sub(&alg.basis_product(j, i).scale(&koszul(space.parity(i), space.parity(j))));
                assert_eq!(mixed.basis_product(i, j), expect);
            }
        }

        // star = circ = 0 gives the zero algebra.
        let zero = DiSuperAlgebra::new(space.clone(), ProductTensor::new(), ProductTensor::new()).unwrap();
        assert!(zero.admissible_product().product().is_zero());
        assert!(zero.check(IdentityKind::PreLeftLeibniz).unwrap().holds);
        assert!(zero.check(IdentityKind::LeftLeibniz).is_err());
    }

    #[test]
    fn left_leibniz_multiplication_operator_identity() {
        // L_{uv} = [L_u, L_v] for left Leibniz products.
        let alg = fixtures::odd_quadratic_2_2(&s(1)).algebra;
        let space = alg.space();
        for i in space.indices() {
            for j in space.indices() {
                let uv = alg.basis_product(i, j);
                let luv = if uv.is_zero() {
                    LinearMap::zero(space.clone(), space.clone())
                } else {
                    alg.multiplication_operator(Side::Left, &uv).unwrap()
                };
                let li = alg.left_mul(i);
                let lj = alg.left_mul(j);
                let bracket = crate::space::supercommutator(&li, &lj);
                assert_eq!(luv.matrix, bracket.matrix, "at ({i},{j})");
            }
        }
    }
}
