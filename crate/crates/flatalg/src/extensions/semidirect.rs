//! Semidirect product of a pre-left Leibniz pair by a one-dimensional line.

use crate::algebra::{DiSuperAlgebra, IdentityKind, ProductTensor};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::space::{koszul, LinearMap, Parity, Vector};

use super::{extend_space, vector_is, EquationFailure};

/// The tuple `(delta, D, xi, G, a0, b0, alpha, beta)` adjoining a line `Kd`:
/// `d star d = a0 + alpha d`, `d star u = delta(u)`, `u star d = D(u)`,
/// `d circ d = b0 + beta d`, `d circ u = xi(u)`, `u circ d = G(u)`.
#[derive(Clone, Debug)]
pub struct AdmissibleTuple {
    pub delta: LinearMap,
    pub d: LinearMap,
    pub xi: LinearMap,
    pub g: LinearMap,
    pub a0: Vector,
    pub b0: Vector,
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl AdmissibleTuple {
    pub fn zero(base: &DiSuperAlgebra) -> Self {
        let sp = base.space().clone();
        AdmissibleTuple {
            delta: LinearMap::zero(sp.clone(), sp.clone()),
            d: LinearMap::zero(sp.clone(), sp.clone()),
            xi: LinearMap::zero(sp.clone(), sp.clone()),
            g: LinearMap::zero(sp.clone(), sp.clone()),
            a0: sp.zero_vector(),
            b0: sp.zero_vector(),
            alpha: Scalar::zero(),
            beta: Scalar::zero(),
        }
    }
}

/// A built semidirect product together with any flagged equation lines.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub di: DiSuperAlgebra,
    pub line_index: usize,
    pub flagged: Vec<EquationFailure>,
}

/// Evaluates the admissibility system of the tuple, transcribed line by
/// line; `sd = (-1)^{|d|}` and `sgn(u) = (-1)^{|u||d|}`.
pub fn admissibility_failures(
    base: &DiSuperAlgebra,
    t: &AdmissibleTuple,
    line: Parity,
) -> Vec<EquationFailure> {
    let space = base.space().clone();
    let n = space.dim();
    let star = base.star();
    let circ = base.circ();
    let mixed = base.admissible_product();
    let st = |x: &Vector, y: &Vector| star.evaluate(x, y).expect("same space");
    let ci = |x: &Vector, y: &Vector| circ.evaluate(x, y).expect("same space");
    let ap = |f: &LinearMap, x: &Vector| f.apply(x).expect("same space");
    let sd = koszul(line, Parity::Odd);
    let one_minus_sd = &Scalar::one() - &sd;
    let apb = &t.alpha + &t.beta;
    let mut fails = Vec::new();

    for i in 0..n {
        let u = space.basis_vector(i);
        let sgn = koszul(space.parity(i), line);
        // Lines quantified over one basis vector.
        vector_is(
            "D^2(u) - u*a0 - alpha D(u) = -(-1)^{|u||d|}(D(xi(u)) + delta(D(u)))",
            &ap(&t.d, &ap(&t.d, &u))
                .sub(&st(&u, &t.a0))
                .sub(&ap(&t.d, &u).scale(&t.alpha)),
            &ap(&t.d, &ap(&t.xi, &u))
                .add(&ap(&t.delta, &ap(&t.d, &u)))
                .scale(&-&sgn),
            &mut fails,
        );
        vector_is(
            "D(delta(u)) - delta(D(u)) = -(-1)^{|u||d|}(D(G(u)) + u*a0 + alpha D(u))",
            &ap(&t.d, &ap(&t.delta, &u)).sub(&ap(&t.delta, &ap(&t.d, &u))),
            &ap(&t.d, &ap(&t.g, &u))
                .add(&st(&u, &t.a0))
                .add(&ap(&t.d, &u).scale(&t.alpha))
                .scale(&-&sgn),
            &mut fails,
        );
        vector_is(
            "(1-(-1)^{|d|}) delta^2(u) - (alpha + (-1)^{|d|} beta) delta(u) = a0*u + (-1)^{|d|} b0*u",
            &ap(&t.delta, &ap(&t.delta, &u))
                .scale(&one_minus_sd)
                .sub(&ap(&t.delta, &u).scale(&(&t.alpha + &(&sd * &t.beta)))),
            &st(&t.a0, &u).add(&st(&t.b0, &u).scale(&sd)),
            &mut fails,
        );
        vector_is(
            "G(D(u)) - u*b0 - beta D(u) = -(-1)^{|u||d|}(G(xi(u)) - xi(G(u)))",
            &ap(&t.g, &ap(&t.d, &u))
                .sub(&st(&u, &t.b0))
                .sub(&ap(&t.d, &u).scale(&t.beta)),
            &ap(&t.g, &ap(&t.xi, &u))
                .sub(&ap(&t.xi, &ap(&t.g, &u)))
                .scale(&-&sgn),
            &mut fails,
        );
        vector_is(
            "G(delta(u)) - delta(G(u)) = -(-1)^{|u||d|}(G^2(u) - u o b0 - beta G(u))",
            &ap(&t.g, &ap(&t.delta, &u)).sub(&ap(&t.delta, &ap(&t.g, &u))),
            &ap(&t.g, &ap(&t.g, &u))
                .sub(&ci(&u, &t.b0))
                .sub(&ap(&t.g, &u).scale(&t.beta))
                .scale(&-&sgn),
            &mut fails,
        );
        vector_is(
            "a0 o u + alpha xi(u) - delta(xi(u)) = -(-1)^{|d|}(b0 o u + beta xi(u) - xi^2(u))",
            &ci(&t.a0, &u)
                .add(&ap(&t.xi, &u).scale(&t.alpha))
                .sub(&ap(&t.delta, &ap(&t.xi, &u))),
            &ci(&t.b0, &u)
                .add(&ap(&t.xi, &u).scale(&t.beta))
                .sub(&ap(&t.xi, &ap(&t.xi, &u)))
                .scale(&-&sd),
            &mut fails,
        );
        vector_is(
            "u o a0 + u o b0 = -(alpha+beta) G(u)",
            &ci(&u, &t.a0).add(&ci(&u, &t.b0)),
            &ap(&t.g, &u).scale(&-&apb),
            &mut fails,
        );
        vector_is(
            "xi(G(u)) = -xi(D(u))",
            &ap(&t.xi, &ap(&t.g, &u)),
            &ap(&t.xi, &ap(&t.d, &u)).neg(),
            &mut fails,
        );
        vector_is(
            "xi^2(u) = -xi(delta(u))",
            &ap(&t.xi, &ap(&t.xi, &u)),
            &ap(&t.xi, &ap(&t.delta, &u)).neg(),
            &mut fails,
        );
    }

    for i in 0..n {
        for j in 0..n {
            let u = space.basis_vector(i);
            let v = space.basis_vector(j);
            let kuv = koszul(space.parity(i), space.parity(j));
            let sgn = koszul(space.parity(i), line);
            let uv = mixed.basis_product(i, j);
            vector_is(
                "D(u.v) = u*D(v) - (-1)^{|u||v|} v*D(u)",
                &ap(&t.d, &uv),
                &st(&u, &ap(&t.d, &v)).sub(&st(&v, &ap(&t.d, &u)).scale(&kuv)),
                &mut fails,
            );
            vector_is(
                "D(u)*v - u*delta(v) = -(-1)^{|u||d|}(xi(u)*v + delta(u*v))",
                &st(&ap(&t.d, &u), &v).sub(&st(&u, &ap(&t.delta, &v))),
                &st(&ap(&t.xi, &u), &v)
                    .add(&ap(&t.delta, &star.basis_product(i, j)))
                    .scale(&-&sgn),
                &mut fails,
            );
            vector_is(
                "delta(u)*v - delta(u*v) = -(-1)^{|u||d|}(G(u)*v + u*delta(v))",
                &st(&ap(&t.delta, &u), &v).sub(&ap(&t.delta, &star.basis_product(i, j))),
                &st(&ap(&t.g, &u), &v)
                    .add(&st(&u, &ap(&t.delta, &v)))
                    .scale(&-&sgn),
                &mut fails,
            );
            vector_is(
                "G(u.v) = u*G(v) + (-1)^{|u||v|} v o G(u)",
                &ap(&t.g, &uv),
                &st(&u, &ap(&t.g, &v)).add(&ci(&v, &ap(&t.g, &u)).scale(&kuv)),
                &mut fails,
            );
            vector_is(
                "D(u) o v - u*xi(v) = -(-1)^{|u||d|}(xi(u) o v - xi(u o v))",
                &ci(&ap(&t.d, &u), &v).sub(&st(&u, &ap(&t.xi, &v))),
                &ci(&ap(&t.xi, &u), &v)
                    .sub(&ap(&t.xi, &circ.basis_product(i, j)))
                    .scale(&-&sgn),
                &mut fails,
            );
            vector_is(
                "delta(u) o v - delta(u o v) = -(-1)^{|u||d|}(G(u) o v - u o xi(v))",
                &ci(&ap(&t.delta, &u), &v).sub(&ap(&t.delta, &circ.basis_product(i, j))),
                &ci(&ap(&t.g, &u), &v)
                    .sub(&ci(&u, &ap(&t.xi, &v)))
                    .scale(&-&sgn),
                &mut fails,
            );
            vector_is(
                "u o G(v) = -u o D(v)",
                &ci(&u, &ap(&t.g, &v)),
                &ci(&u, &ap(&t.d, &v)).neg(),
                &mut fails,
            );
            vector_is(
                "u o xi(v) = -u o delta(v)",
                &ci(&u, &ap(&t.xi, &v)),
                &ci(&u, &ap(&t.delta, &v)).neg(),
                &mut fails,
            );
            vector_is(
                "xi(u o v) = -xi(u*v)",
                &ap(&t.xi, &circ.basis_product(i, j)),
                &ap(&t.xi, &star.basis_product(i, j)).neg(),
                &mut fails,
            );
        }
    }

    // Lines on the distinguished vectors and scalars.
    vector_is(
        "D(a0 + (-1)^{|d|} b0) - (1-(-1)^{|d|}) delta(a0) = -(-1)^{|d|}(alpha+beta) a0",
        &ap(&t.d, &t.a0.add(&t.b0.scale(&sd)))
            .sub(&ap(&t.delta, &t.a0).scale(&one_minus_sd)),
        &t.a0.scale(&-&(&sd * &apb)),
        &mut fails,
    );
    vector_is(
        "G(a0) - delta(b0) + alpha b0 - beta a0 = -(-1)^{|d|}(G(b0) - xi(b0))",
        &ap(&t.g, &t.a0)
            .sub(&ap(&t.delta, &t.b0))
            .add(&t.b0.scale(&t.alpha))
            .sub(&t.a0.scale(&t.beta)),
        &ap(&t.g, &t.b0).sub(&ap(&t.xi, &t.b0)).scale(&-&sd),
        &mut fails,
    );
    vector_is(
        "xi(b0 + a0) = -(alpha+beta) b0",
        &ap(&t.xi, &t.b0.add(&t.a0)),
        &t.b0.scale(&-&apb),
        &mut fails,
    );
    let a2 = &t.alpha * &t.alpha;
    let b2 = &t.beta * &t.beta;
    let mab = -&(&t.alpha * &t.beta);
    if a2 != b2 || b2 != mab {
        fails.push(EquationFailure {
            name: "alpha^2 = beta^2 = -alpha beta".into(),
            witness: format!("alpha = {}, beta = {}", t.alpha, t.beta),
        });
    }
    fails
}

/// Adjoins the line `Kd` with the tuple's multiplication table. The base
/// must be pre-left Leibniz; the admissibility system is evaluated first
/// and the built pair is verified pre-left Leibniz.
pub fn semidirect_product(
    base: &DiSuperAlgebra,
    tuple: &AdmissibleTuple,
    line_parity: Parity,
) -> Result<Semidirect, Error> {
    let space = base.space().clone();
    let pre = base.check(IdentityKind::PreLeftLeibniz)?;
    if !pre.holds {
        return Err(Error::EquationFailed {
            name: "base is pre-left Leibniz".into(),
            witness: pre.counterexample.map(|c| c.describe()).unwrap_or_default(),
        });
    }
    for (name, map) in [
        ("delta", &tuple.delta),
        ("D", &tuple.d),
        ("xi", &tuple.xi),
        ("G", &tuple.g),
    ] {
        if !map.is_zero() && map.degree != Some(line_parity) {
            return Err(Error::ParityViolation(format!(
                "{name} must be homogeneous of the line parity {line_parity}"
            )));
        }
    }
    for (name, v) in [("a0", &tuple.a0), ("b0", &tuple.b0)] {
        if !v.is_zero() && v.parity() != Some(Parity::Even) {
            return Err(Error::NotHomogeneous(match name {
                "a0" => "even vector a0",
                _ => "even vector b0",
            }));
        }
    }
    let failures = admissibility_failures(base, tuple, line_parity);

    let ext = extend_space(&space, &[("d", line_parity)]);
    let d = ext.adjoined[0];
    let mut star = ProductTensor::new();
    let mut circ = ProductTensor::new();
    let put = |t: &mut ProductTensor, i: usize, j: usize, value: &Vector, ext: &super::SpaceExtension| {
        for (k, c) in ext.lift(value).iter() {
            t.set(i, j, k, c.clone());
        }
    };
    for i in space.indices() {
        for j in space.indices() {
            put(&mut star, ext.core_to_ext[i], ext.core_to_ext[j], &base.star().basis_product(i, j), &ext);
            put(&mut circ, ext.core_to_ext[i], ext.core_to_ext[j], &base.circ().basis_product(i, j), &ext);
        }
        put(&mut star, d, ext.core_to_ext[i], &tuple.delta.image_of_basis(i), &ext);
        put(&mut star, ext.core_to_ext[i], d, &tuple.d.image_of_basis(i), &ext);
        put(&mut circ, d, ext.core_to_ext[i], &tuple.xi.image_of_basis(i), &ext);
        put(&mut circ, ext.core_to_ext[i], d, &tuple.g.image_of_basis(i), &ext);
    }
    put(&mut star, d, d, &tuple.a0, &ext);
    if !tuple.alpha.is_zero() {
        star.set(d, d, d, tuple.alpha.clone());
    }
    put(&mut circ, d, d, &tuple.b0, &ext);
    if !tuple.beta.is_zero() {
        circ.set(d, d, d, tuple.beta.clone());
    }

    let di = DiSuperAlgebra::new(ext.space.clone(), star, circ)?;
    let built = di.check(IdentityKind::PreLeftLeibniz)?;
    match (failures.is_empty(), built.holds) {
        (_, true) => Ok(Semidirect {
            di,
            line_index: d,
            flagged: failures,
        }),
        (false, false) => {
            let first = &failures[0];
            Err(Error::EquationFailed {
                name: first.name.clone(),
                witness: first.witness.clone(),
            })
        }
        (true, false) => Err(Error::Internal(format!(
            "admissibility lines hold but the product is not pre-left Leibniz at {}",
            built.counterexample.map(|c| c.describe()).unwrap_or_default()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::levicivita::levi_civita;
    use crate::space::SuperSpace;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn zero_tuple_extends_any_pre_leibniz_base() {
        let q = fixtures::odd_quadratic_2_2(&s(1));
        let base = levi_civita(&q.algebra, &q.form).unwrap().as_di_algebra();
        for parity in [Parity::Even, Parity::Odd] {
            let ext = semidirect_product(&base, &AdmissibleTuple::zero(&base), parity).unwrap();
            assert!(ext.flagged.is_empty());
            let d = ext.line_index;
            assert!(ext.di.star().basis_product(d, d).is_zero());
        }
    }

    #[test]
    fn one_dimensional_extension_of_the_zero_base() {
        let sp = SuperSpace::new(Vec::<String>::new(), vec![]).unwrap();
        let base = DiSuperAlgebra::new(sp, ProductTensor::new(), ProductTensor::new()).unwrap();
        let mut tuple = AdmissibleTuple::zero(&base);
        tuple.alpha = s(3);
        tuple.beta = s(-3);
        let ext = semidirect_product(&base, &tuple, Parity::Even).unwrap();
        assert!(ext.flagged.is_empty());
        let d = ext.line_index;
        // d star d = 3d, d circ d = -3d.
        assert_eq!(ext.di.star().product().get(d, d, d), s(3));
        assert_eq!(ext.di.circ().product().get(d, d, d), s(-3));
    }

    #[test]
    fn beta_not_minus_alpha_is_rejected() {
        let sp = SuperSpace::new(Vec::<String>::new(), vec![]).unwrap();
        let base = DiSuperAlgebra::new(sp, ProductTensor::new(), ProductTensor::new()).unwrap();
        let mut tuple = AdmissibleTuple::zero(&base);
        tuple.alpha = s(1);
        tuple.beta = s(1);
        let err = semidirect_product(&base, &tuple, Parity::Even).unwrap_err();
        match err {
            Error::EquationFailed { name, .. } => {
                assert_eq!(name, "alpha^2 = beta^2 = -alpha beta")
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn wrong_degree_map_rejected() {
        let q = fixtures::even_quadratic_2_2(&s(1));
        let base = levi_civita(&q.algebra, &q.form).unwrap().as_di_algebra();
        let sp = base.space().clone();
        let mut tuple = AdmissibleTuple::zero(&base);
        // An even map on an odd line.
        tuple.d = LinearMap::identity(sp);
        let err = semidirect_product(&base, &tuple, Parity::Odd).unwrap_err();
        assert!(matches!(err, Error::ParityViolation(_)));
    }
}
