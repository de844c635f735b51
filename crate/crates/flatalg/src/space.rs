//! Z2-graded vector spaces, homogeneous vectors and linear maps.
//!
//! Basis order is canonical everywhere: the even basis vectors first, then
//! the odd ones. All matrix layouts in the crate follow that order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Degree of a homogeneous element.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Mod-2 sum; `Even` is the identity.
    pub fn plus(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// The Koszul sign `(-1)^{|u||v|}` as a scalar.
pub fn koszul(u: Parity, v: Parity) -> Scalar {
    if u.is_odd() && v.is_odd() {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

#[derive(Debug)]
struct SpaceInner {
    labels: Vec<String>,
    even_count: usize,
}

/// A finite-dimensional Z2-graded space with a fixed ordered basis.
#[derive(Clone, Debug)]
pub struct SuperSpace(Arc<SpaceInner>);

impl PartialEq for SuperSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.labels == other.0.labels && self.0.even_count == other.0.even_count)
    }
}

impl Eq for SuperSpace {}

impl SuperSpace {
    /// Builds a space from even labels then odd labels. Labels must be unique.
    pub fn new<S: Into<String>>(even: Vec<S>, odd: Vec<S>) -> Result<Self, Error> {
        let even_count = even.len();
        let labels: Vec<String> = even
            .into_iter()
            .map(Into::into)
            .chain(odd.into_iter().map(Into::into))
            .collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(SuperSpace(Arc::new(SpaceInner { labels, even_count })))
    }

    pub fn dim(&self) -> usize {
        self.0.labels.len()
    }

    pub fn even_dim(&self) -> usize {
        self.0.even_count
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.0.even_count
    }

    /// `(n|m)` as a pair.
    pub fn superdim(&self) -> (usize, usize) {
        (self.even_dim(), self.odd_dim())
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        if i < self.0.even_count {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize, Error> {
        self.0
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        0..self.dim()
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut coords = BTreeMap::new();
        coords.insert(i, Scalar::one());
        Vector {
            space: self.clone(),
            coords,
        }
    }

    pub fn zero_vector(&self) -> Vector {
        Vector {
            space: self.clone(),
            coords: BTreeMap::new(),
        }
    }

    pub fn vector_from_coords(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.dim());
        let mut map = BTreeMap::new();
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                map.insert(i, c.clone());
            }
        }
        Vector {
            space: self.clone(),
            coords: map,
        }
    }

    /// Fresh labels not present in this space, derived from `stem` by priming.
    pub fn fresh_label(&self, stem: &str) -> String {
        let mut candidate = stem.to_string();
        while self.0.labels.contains(&candidate) {
            candidate.push('\'');
        }
        candidate
    }
}

const PI_OPEN: &str = "Pi(";

/// The change-of-parity functor on spaces: swaps the parity blocks and wraps
/// each label with a `Pi(...)` marker; applying it twice restores the
/// original labels.
pub fn parity_shift(space: &SuperSpace) -> SuperSpace {
    let wrap = |l: &str| -> String {
        if let Some(stripped) = l.strip_prefix(PI_OPEN).and_then(|r| r.strip_suffix(')')) {
            stripped.to_string()
        } else {
            format!("{PI_OPEN}{l})")
        }
    };
    let new_even: Vec<String> = (space.even_dim()..space.dim()).map(|i| wrap(space.label(i))).collect();
    let new_odd: Vec<String> = (0..space.even_dim()).map(|i| wrap(space.label(i))).collect();
    SuperSpace::new(new_even, new_odd).expect("parity shift keeps labels unique")
}

/// A sparse vector over a superspace.
#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    space: SuperSpace,
    coords: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, i: usize) -> Scalar {
        self.coords.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coord_of(&self, label: &str) -> Result<Scalar, Error> {
        Ok(self.coord(self.space.index_of(label)?))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coords.iter().map(|(i, s)| (*i, s))
    }

    pub fn set(&mut self, i: usize, value: Scalar) {
        if value.is_zero() {
            self.coords.remove(&i);
        } else {
            self.coords.insert(i, value);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Vector, factor: &Scalar) {
        assert_eq!(self.space, other.space, "space mismatch");
        if factor.is_zero() {
            return;
        }
        for (i, c) in &other.coords {
            let v = self.coord(*i) + c * factor;
            self.set(*i, v);
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Scalar::one());
        out
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        if s.is_zero() {
            return self.space.zero_vector();
        }
        Vector {
            space: self.space.clone(),
            coords: self.coords.iter().map(|(i, c)| (*i, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        self.scale(&-Scalar::one())
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        (0..self.space.dim()).map(|i| self.coord(i)).collect()
    }

    /// The parity of a homogeneous vector; `None` for `0` or mixed support.
    pub fn parity(&self) -> Option<Parity> {
        let mut parity = None;
        for i in self.coords.keys() {
            let p = self.space.parity(*i);
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        parity
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.parity().is_some()
    }

    /// The component supported on one parity block.
    pub fn component(&self, p: Parity) -> Vector {
        Vector {
            space: self.space.clone(),
            coords: self
                .coords
                .iter()
                .filter(|(i, _)| self.space.parity(**i) == p)
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coords
            .iter()
            .map(|(i, c)| format!("{}*{}", c, self.space.label(*i)))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A linear map between superspaces, stored densely in canonical basis order:
/// column `j` holds the image of the j-th domain basis vector.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub domain: SuperSpace,
    pub codomain: SuperSpace,
    pub matrix: Matrix,
    pub degree: Option<Parity>,
}

// Equality is semantic: the degree is derived metadata and the zero map is
// homogeneous of every degree.
impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.matrix == other.matrix
    }
}

impl Eq for LinearMap {}

impl LinearMap {
    pub fn new(domain: SuperSpace, codomain: SuperSpace, matrix: Matrix) -> Self {
        assert_eq!(matrix.rows(), codomain.dim());
        assert_eq!(matrix.cols(), domain.dim());
        let degree = infer_degree(&domain, &codomain, &matrix);
        LinearMap {
            domain,
            codomain,
            matrix,
            degree,
        }
    }

    pub fn zero(domain: SuperSpace, codomain: SuperSpace) -> Self {
        let m = Matrix::zero(codomain.dim(), domain.dim());
        LinearMap::new(domain, codomain, m)
    }

    pub fn identity(space: SuperSpace) -> Self {
        let n = space.dim();
        LinearMap::new(space.clone(), space, Matrix::identity(n))
    }

    pub fn from_images(domain: &SuperSpace, codomain: &SuperSpace, images: &[Vector]) -> Self {
        assert_eq!(images.len(), domain.dim());
        let m = Matrix::from_fn(codomain.dim(), domain.dim(), |r, c| images[c].coord(r));
        LinearMap::new(domain.clone(), codomain.clone(), m)
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector, Error> {
        if v.space() != &self.domain {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.codomain.zero_vector();
        for (j, c) in v.iter() {
            for r in 0..self.codomain.dim() {
                let e = self.matrix.at(r, j);
                if !e.is_zero() {
                    let v = out.coord(r) + e * c;
                    out.set(r, v);
                }
            }
        }
        Ok(out)
    }

    pub fn image_of_basis(&self, j: usize) -> Vector {
        self.codomain.vector_from_coords(&self.matrix.column(j))
    }

    /// Composition `self ∘ other`; degrees add mod 2 when both are known.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(other.codomain, self.domain, "composition mismatch");
        LinearMap::new(other.domain.clone(), self.codomain.clone(), &self.matrix * &other.matrix)
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.domain, other.domain);
        assert_eq!(self.codomain, other.codomain);
        LinearMap::new(self.domain.clone(), self.codomain.clone(), &self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.domain, other.domain);
        assert_eq!(self.codomain, other.codomain);
        LinearMap::new(self.domain.clone(), self.codomain.clone(), &self.matrix - &other.matrix)
    }

    pub fn scale(&self, s: &Scalar) -> LinearMap {
        LinearMap::new(self.domain.clone(), self.codomain.clone(), self.matrix.scale(s))
    }

    pub fn neg(&self) -> LinearMap {
        self.scale(&-Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.dim() == self.codomain.dim() && self.matrix.is_invertible()
    }
}

/// A map is homogeneous of degree `p` when the image of every parity-`q`
/// basis vector is supported in parity `q + p`.
fn infer_degree(domain: &SuperSpace, codomain: &SuperSpace, m: &Matrix) -> Option<Parity> {
    let mut deg: Option<Parity> = None;
    for j in 0..domain.dim() {
        for r in 0..codomain.dim() {
            if m.at(r, j).is_zero() {
                continue;
            }
            let d = domain.parity(j).plus(codomain.parity(r));
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
    }
    // The zero map is even by convention.
    Some(deg.unwrap_or(Parity::Even))
}

/// Supercommutator `[f, g] = f∘g - (-1)^{|f||g|} g∘f` of two homogeneous maps.
pub fn supercommutator(f: &LinearMap, g: &LinearMap) -> LinearMap {
    let df = f.degree.expect("homogeneous map required");
    let dg = g.degree.expect("homogeneous map required");
    let fg = f.compose(g);
    let gf = g.compose(f).scale(&koszul(df, dg));
    fg.sub(&gf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn space22() -> SuperSpace {
        SuperSpace::new(vec!["e1", "e2"], vec!["f1", "f2"]).unwrap()
    }

    #[test]
    fn canonical_order_and_parities() {
        let v = space22();
        assert_eq!(v.superdim(), (2, 2));
        assert_eq!(v.parity(0), Parity::Even);
        assert_eq!(v.parity(3), Parity::Odd);
        assert_eq!(v.index_of("f1").unwrap(), 2);
        assert!(v.index_of("zz").is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(SuperSpace::new(vec!["a", "a"], vec!["b"]).is_err());
        assert!(SuperSpace::new(vec!["a"], vec!["a"]).is_err());
    }

    #[test]
    fn parity_shift_swaps_blocks_and_is_involutive() {
        let v = space22();
        let pv = parity_shift(&v);
        assert_eq!(pv.superdim(), (2, 2));
        assert_eq!(pv.labels(), ["Pi(f1)", "Pi(f2)", "Pi(e1)", "Pi(e2)"]);
        let back = parity_shift(&pv);
        assert_eq!(back.labels(), v.labels());
        assert_eq!(back, v);

        let asym = SuperSpace::new(vec!["a"], vec!["b", "c"]).unwrap();
        assert_eq!(parity_shift(&asym).superdim(), (2, 1));

        let empty = SuperSpace::new(Vec::<String>::new(), vec![]).unwrap();
        assert_eq!(parity_shift(&empty).superdim(), (0, 0));
    }

    #[test]
    fn vector_homogeneity() {
        let v = space22();
        let mut x = v.zero_vector();
        assert!(x.is_homogeneous());
        x.set(0, s(2));
        x.set(1, s(-1));
        assert_eq!(x.parity(), Some(Parity::Even));
        x.set(3, s(5));
        assert_eq!(x.parity(), None);
        assert!(!x.is_homogeneous());
        assert_eq!(x.component(Parity::Odd).to_dense(), vec![s(0), s(0), s(0), s(5)]);
    }

    #[test]
    fn map_degree_inference_and_composition() {
        let v = space22();
        // e1 -> f1 is odd.
        let mut m = Matrix::zero(4, 4);
        *m.at_mut(2, 0) = s(1);
        let f = LinearMap::new(v.clone(), v.clone(), m);
        assert_eq!(f.degree, Some(Parity::Odd));
        let ff = f.compose(&f);
        assert_eq!(ff.degree, Some(Parity::Even));
        assert!(ff.is_zero());

        let id = LinearMap::identity(v.clone());
        assert_eq!(id.degree, Some(Parity::Even));
        assert_eq!(supercommutator(&f, &f).matrix, (&(&f.matrix * &f.matrix) + &(&f.matrix * &f.matrix)));
    }
}
