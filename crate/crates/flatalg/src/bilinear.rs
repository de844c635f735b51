//! Supersymmetric bilinear forms, adjoints and orthogonality.
//!
//! Gram tables store the raw values `B(b_i, b_j)`. Supersymmetry is the
//! value-level rule `B(u,v) = (-1)^{|u||v|} B(v,u)`: symmetric on the even
//! block, antisymmetric on the odd block of an even form, and symmetric on
//! the mixed pairs of an odd form.

use crate::algebra::{CheckReport, Counterexample, SideValue, SuperAlgebra};
use crate::error::Error;
use crate::linalg::{solve_linear, LinSolve, Matrix};
use crate::scalar::Scalar;
use crate::space::{koszul, LinearMap, Parity, SuperSpace, Vector};

/// A nondegenerate supersymmetric even or odd bilinear form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    space: SuperSpace,
    parity: Parity,
    gram: Matrix,
}

/// Builds a form from a sparse entry list `(label_a, label_b, value)`.
///
/// Mirror entries are completed by supersymmetry; conflicting explicit
/// entries, parity-rule violations and degenerate Gram matrices are rejected
/// (the latter with a kernel-vector witness in the error).
pub fn build_form(
    space: &SuperSpace,
    parity: Parity,
    entries: &[(String, String, Scalar)],
) -> Result<BilinearForm, Error> {
    let n = space.dim();
    let mut gram: Vec<Vec<Option<Scalar>>> = vec![vec![None; n]; n];
    for (la, lb, value) in entries {
        let i = space.index_of(la)?;
        let j = space.index_of(lb)?;
        let pair_parity = space.parity(i).plus(space.parity(j));
        if pair_parity != parity {
            return Err(Error::ParityViolation(format!(
                "a {parity} form cannot pair {} with {}",
                space.label(i),
                space.label(j)
            )));
        }
        let mirror = value * &koszul(space.parity(i), space.parity(j));
        for (r, c, v) in [(i, j, value.clone()), (j, i, mirror)] {
            match &gram[r][c] {
                None => gram[r][c] = Some(v),
                Some(existing) if *existing == v => {}
                Some(_) => {
                    return Err(Error::SupersymmetryConflict(
                        space.label(r).to_string(),
                        space.label(c).to_string(),
                    ))
                }
            }
        }
    }
    let gram = Matrix::from_fn(n, n, |r, c| gram[r][c].clone().unwrap_or_else(Scalar::zero));
    let form = BilinearForm {
        space: space.clone(),
        parity,
        gram,
    };
    if let Some(witness) = form.kernel_vector() {
        return Err(Error::DegenerateForm(format!("{witness:?}")));
    }
    Ok(form)
}

impl BilinearForm {
    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn basis_value(&self, i: usize, j: usize) -> &Scalar {
        self.gram.at(i, j)
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Result<Scalar, Error> {
        if x.space() != &self.space || y.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let mut acc = Scalar::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let g = self.gram.at(i, j);
                if !g.is_zero() {
                    acc += &(&(a * b) * g);
                }
            }
        }
        Ok(acc)
    }

    fn kernel_vector(&self) -> Option<Vector> {
        self.gram
            .kernel_basis()
            .into_iter()
            .next()
            .map(|coords| self.space.vector_from_coords(&coords))
    }

    /// Solves `<x, b_j> = rhs_j` for `x`.
    pub fn solve_against(&self, rhs: &[Scalar]) -> Vector {
        // <x, b_j> = sum_i x_i G[i][j]  =>  G^T x = rhs.
        let gt = self.gram.transpose();
        let b = Matrix::from_fn(rhs.len(), 1, |r, _| rhs[r].clone());
        match solve_linear(&gt, &b).expect("square system") {
            LinSolve::Unique(x) => self.space.vector_from_coords(&x.column(0)),
            LinSolve::Singular { .. } => unreachable!("form is nondegenerate"),
        }
    }

    /// Exhaustive invariance check `<uv, w> = <u, vw>` over basis triples.
    pub fn is_invariant(&self, alg: &SuperAlgebra) -> Result<CheckReport, Error> {
        if alg.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let n = self.space.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.eval(&alg.basis_product(i, j), &self.space.basis_vector(k))?;
                    let rhs = self.eval(&self.space.basis_vector(i), &alg.basis_product(j, k))?;
                    if lhs != rhs {
                        return Ok(CheckReport::fail(Counterexample {
                            tuple: vec![
                                self.space.label(i).to_string(),
                                self.space.label(j).to_string(),
                                self.space.label(k).to_string(),
                            ],
                            clause: None,
                            lhs: SideValue::Scalar(lhs),
                            rhs: SideValue::Scalar(rhs),
                        }));
                    }
                }
            }
        }
        Ok(CheckReport::pass())
    }

    /// The unique `g` with `<f(u), v> = (-1)^{|f||u|} <u, g(v)>`.
    pub fn adjoint(&self, f: &LinearMap) -> Result<LinearMap, Error> {
        if f.domain != self.space || f.codomain != self.space {
            return Err(Error::SpaceMismatch);
        }
        let alpha = f.degree.ok_or(Error::NotHomogeneous("linear map"))?;
        let n = self.space.dim();
        // For each j solve <b_i, g(b_j)> = (-1)^{alpha |b_i|} <f(b_i), b_j>.
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            let rhs: Vec<Scalar> = (0..n)
                .map(|i| {
                    let fi = f.image_of_basis(i);
                    let val = self
                        .eval(&fi, &self.space.basis_vector(j))
                        .expect("same space");
                    &val * &koszul(alpha, self.space.parity(i))
                })
                .collect();
            // <b_i, x> = sum_k G[i][k] x_k  =>  G x = rhs.
            let b = Matrix::from_fn(n, 1, |r, _| rhs[r].clone());
            let x = match solve_linear(&self.gram, &b).expect("square system") {
                LinSolve::Unique(x) => x,
                LinSolve::Singular { .. } => unreachable!("form is nondegenerate"),
            };
            images.push(self.space.vector_from_coords(&x.column(0)));
        }
        let mut g = LinearMap::from_images(&self.space, &self.space, &images);
        if g.is_zero() {
            g.degree = Some(alpha);
        }
        debug_assert_eq!(g.degree, Some(alpha));
        Ok(g)
    }

    /// `{x : <x, s> = 0 for every basis vector s of the subspace}`.
    pub fn orthogonal(&self, s: &SubSpace) -> SubSpace {
        let n = self.space.dim();
        let constraints = Matrix::from_fn(s.basis.len(), n, |r, c| {
            self.eval(&self.space.basis_vector(c), &s.basis[r])
                .expect("same space")
        });
        let kernel = constraints.kernel_basis();
        let vectors: Vec<Vector> = kernel
            .into_iter()
            .map(|coords| self.space.vector_from_coords(&coords))
            .collect();
        SubSpace::span(&self.space, &vectors)
    }

    pub fn is_totally_isotropic(&self, s: &SubSpace) -> bool {
        s.basis.iter().all(|x| {
            s.basis
                .iter()
                .all(|y| self.eval(x, y).expect("same space").is_zero())
        })
    }

    /// Restriction to a graded subspace described by `keep` basis indices of
    /// a smaller space whose i-th basis vector is `vectors[i]`.
    pub fn restrict(&self, sub_space: &SuperSpace, vectors: &[Vector]) -> Result<BilinearForm, Error> {
        assert_eq!(sub_space.dim(), vectors.len());
        let gram = Matrix::from_fn(sub_space.dim(), sub_space.dim(), |r, c| {
            self.eval(&vectors[r], &vectors[c]).expect("same space")
        });
        let form = BilinearForm {
            space: sub_space.clone(),
            parity: self.parity,
            gram,
        };
        if let Some(w) = form.kernel_vector() {
            return Err(Error::DegenerateForm(format!("{w:?}")));
        }
        Ok(form)
    }
}

/// A subspace stored as a reduced row echelon basis, so equal subspaces have
/// syntactically equal bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubSpace {
    space: SuperSpace,
    basis: Vec<Vector>,
}

impl SubSpace {
    pub fn zero(space: &SuperSpace) -> Self {
        SubSpace {
            space: space.clone(),
            basis: Vec::new(),
        }
    }

    pub fn full(space: &SuperSpace) -> Self {
        let basis = space.indices().map(|i| space.basis_vector(i)).collect();
        SubSpace {
            space: space.clone(),
            basis,
        }
    }

    pub fn span(space: &SuperSpace, vectors: &[Vector]) -> Self {
        let rows: Vec<Vec<Scalar>> = vectors.iter().map(Vector::to_dense).collect();
        if rows.is_empty() {
            return SubSpace::zero(space);
        }
        let (rref, pivots) = Matrix::from_rows(rows).rref();
        let basis = (0..pivots.len())
            .map(|r| space.vector_from_coords(&rref.row(r)))
            .collect();
        SubSpace {
            space: space.clone(),
            basis,
        }
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        let mut rows: Vec<Vec<Scalar>> = self.basis.iter().map(Vector::to_dense).collect();
        let before = rows.len();
        rows.push(v.to_dense());
        Matrix::from_rows(rows).rank() == before
    }

    pub fn intersect(&self, other: &SubSpace) -> SubSpace {
        // x in both spans: solve [A^T | -B^T] on stacked coefficients.
        if self.is_zero() || other.is_zero() {
            return SubSpace::zero(&self.space);
        }
        let n = self.space.dim();
        let a = self.basis.len();
        let b = other.basis.len();
        let m = Matrix::from_fn(n, a + b, |r, c| {
            if c < a {
                self.basis[c].coord(r)
            } else {
                -other.basis[c - a].coord(r)
            }
        });
        let kernel = m.kernel_basis();
        let vectors: Vec<Vector> = kernel
            .into_iter()
            .map(|coeffs| {
                let mut v = self.space.zero_vector();
                for (idx, c) in coeffs.iter().take(a).enumerate() {
                    v.add_assign_scaled(&self.basis[idx], c);
                }
                v
            })
            .collect();
        SubSpace::span(&self.space, &vectors)
    }

    pub fn sum(&self, other: &SubSpace) -> SubSpace {
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        SubSpace::span(&self.space, &vectors)
    }

    /// The intersection with one parity block.
    pub fn parity_component(&self, p: Parity) -> SubSpace {
        let block: Vec<Vector> = self
            .space
            .indices()
            .filter(|i| self.space.parity(*i) == p)
            .map(|i| self.space.basis_vector(i))
            .collect();
        self.intersect(&SubSpace::span(&self.space, &block))
    }
}
