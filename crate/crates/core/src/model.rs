//! Finite-dimensional JB*-triple models and their products.
//!
//! Three flavours are provided, all realised on complex matrices:
//!
//! * [`TripleModel::Rect`]: `m x n` matrices with `{a,b,c} = ½(ab*c + cb*a)`;
//! * [`TripleModel::CStar`]: the C*-algebra `M_n` with the same triple product;
//! * [`TripleModel::JBStar`]: `M_n` as a JB*-algebra under `a∘b = ½(ab + ba)`,
//!   whose triple product is computed purely from the Jordan product as
//!   `(a∘b*)∘c + (c∘b*)∘a - (a∘c)∘b*`.
//!
//! The hermitian part of the JB*-algebra (the JB-algebra) is not a separate
//! model; callers restrict inputs to self-adjoint matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, RealifiedMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TripleModel {
    Rect { m: usize, n: usize },
    CStar { n: usize },
    JBStar { n: usize },
}

impl fmt::Display for TripleModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleModel::Rect { m, n } => write!(f, "rect({m}x{n})"),
            TripleModel::CStar { n } => write!(f, "cstar({n})"),
            TripleModel::JBStar { n } => write!(f, "jbstar({n})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    kind: String,
    m: usize,
    n: usize,
}

impl Serialize for TripleModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (m, n) = self.shape();
        ModelJson {
            kind: self.kind_name().to_string(),
            m,
            n,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TripleModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ModelJson::deserialize(d)?;
        TripleModel::from_parts(&raw.kind, raw.m, raw.n).map_err(serde::de::Error::custom)
    }
}

impl TripleModel {
    pub fn from_parts(kind: &str, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidMatrix(
                "model dimensions must be positive".into(),
            ));
        }
        let square = |n| {
            if m != n {
                Err(Error::InvalidMatrix(format!(
                    "{kind} model must be square, got {m}x{n}"
                )))
            } else {
                Ok(())
            }
        };
        match kind {
            "rect" => Ok(TripleModel::Rect { m, n }),
            "cstar" => square(n).map(|_| TripleModel::CStar { n }),
            "jbstar" => square(n).map(|_| TripleModel::JBStar { n }),
            other => Err(Error::Json(format!("unknown model kind `{other}`"))),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            TripleModel::Rect { .. } => "rect",
            TripleModel::CStar { .. } => "cstar",
            TripleModel::JBStar { .. } => "jbstar",
        }
    }

    /// Element shape.
    pub fn shape(&self) -> (usize, usize) {
        match *self {
            TripleModel::Rect { m, n } => (m, n),
            TripleModel::CStar { n } | TripleModel::JBStar { n } => (n, n),
        }
    }

    /// Real dimension of the underlying space.
    pub fn real_dim(&self) -> usize {
        let (m, n) = self.shape();
        2 * m * n
    }

    pub fn is_square(&self) -> bool {
        !matches!(self, TripleModel::Rect { m, n } if m != n)
    }

    pub fn check(&self, x: &ComplexMatrix) -> Result<()> {
        x.check_shape(self.shape())
    }

    pub fn require_cstar(&self) -> Result<usize> {
        match *self {
            TripleModel::CStar { n } => Ok(n),
            _ => Err(Error::WrongModel {
                required: "cstar",
                got: self.to_string(),
            }),
        }
    }

    pub fn require_jbstar(&self) -> Result<usize> {
        match *self {
            TripleModel::JBStar { n } => Ok(n),
            _ => Err(Error::WrongModel {
                required: "jbstar",
                got: self.to_string(),
            }),
        }
    }

    pub fn zero(&self) -> ComplexMatrix {
        let (m, n) = self.shape();
        ComplexMatrix::zeros(m, n)
    }

    /// `{a, b, c}`.
    pub fn triple_product(
        &self,
        a: &ComplexMatrix,
        b: &ComplexMatrix,
        c: &ComplexMatrix,
    ) -> Result<ComplexMatrix> {
        self.check(a)?;
        self.check(b)?;
        self.check(c)?;
        Ok(self.tp(a, b, c))
    }

    /// Unchecked triple product for internal use on validated inputs.
    pub(crate) fn tp(
        &self,
        a: &ComplexMatrix,
        b: &ComplexMatrix,
        c: &ComplexMatrix,
    ) -> ComplexMatrix {
        match self {
            TripleModel::Rect { .. } | TripleModel::CStar { .. } => {
                let bs = b.adjoint();
                (&(&(a * &bs) * c) + &(&(c * &bs) * a)).scale_real(0.5)
            }
            TripleModel::JBStar { .. } => {
                let bs = b.adjoint();
                let t1 = jordan::circ(&jordan::circ(a, &bs), c);
                let t2 = jordan::circ(&jordan::circ(c, &bs), a);
                let t3 = jordan::circ(&jordan::circ(a, c), &bs);
                &(&t1 + &t2) - &t3
            }
        }
    }

    /// `L(a, b)`: `x ↦ {a, b, x}` (complex linear).
    pub fn materialize_l(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<RealifiedMap> {
        self.check(a)?;
        self.check(b)?;
        let s = self.shape();
        Ok(RealifiedMap::from_fn(s, s, |x| self.tp(a, b, x)))
    }

    /// `Q(a)`: `x ↦ {a, x, a}` (conjugate linear).
    pub fn materialize_q(&self, a: &ComplexMatrix) -> Result<RealifiedMap> {
        self.check(a)?;
        let s = self.shape();
        Ok(RealifiedMap::from_fn(s, s, |x| self.tp(a, x, a)))
    }

    /// `Q(a, c)`: `x ↦ {a, x, c}`.
    pub fn materialize_q2(&self, a: &ComplexMatrix, c: &ComplexMatrix) -> Result<RealifiedMap> {
        self.check(a)?;
        self.check(c)?;
        let s = self.shape();
        Ok(RealifiedMap::from_fn(s, s, |x| self.tp(a, x, c)))
    }

    /// Jordan product, U- and T-operators of the JB*-algebra model.
    pub fn jordan_ops(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<JordanOps> {
        self.require_jbstar()?;
        self.check(a)?;
        self.check(b)?;
        Ok(JordanOps {
            product: jordan::circ(a, b),
            u_map: jordan::u(a, b),
            t_map: jordan::circ(a, b),
        })
    }

    /// `U_a` of the JB*-algebra model as a realified map.
    pub fn materialize_u(&self, a: &ComplexMatrix) -> Result<RealifiedMap> {
        self.require_jbstar()?;
        self.check(a)?;
        let s = self.shape();
        Ok(RealifiedMap::from_fn(s, s, |x| jordan::u(a, x)))
    }

    /// `U_{a,b}` of the JB*-algebra model.
    pub fn materialize_u2(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<RealifiedMap> {
        self.require_jbstar()?;
        self.check(a)?;
        self.check(b)?;
        let s = self.shape();
        Ok(RealifiedMap::from_fn(s, s, |x| jordan::u2(a, b, x)))
    }

    /// `T_a`: Jordan multiplication by `a`.
    pub fn materialize_t(&self, a: &ComplexMatrix) -> Result<RealifiedMap> {
        self.require_jbstar()?;
        self.check(a)?;
        let s = self.shape();
        Ok(RealifiedMap::from_fn(s, s, |x| jordan::circ(a, x)))
    }
}

/// Results of [`TripleModel::jordan_ops`].
#[derive(Clone, Debug)]
pub struct JordanOps {
    /// `a∘b`
    pub product: ComplexMatrix,
    /// `U_a(b)`
    pub u_map: ComplexMatrix,
    /// `T_a(b)`
    pub t_map: ComplexMatrix,
}

/// Jordan arithmetic on square matrices.
pub mod jordan {
    use crate::linalg::ComplexMatrix;

    /// `a∘b = ½(ab + ba)`.
    pub fn circ(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        (&(a * b) + &(b * a)).scale_real(0.5)
    }

    /// `U_a(b) = 2(a∘b)∘a - a²∘b`.
    pub fn u(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        let ab = circ(a, b);
        &circ(&ab, a).scale_real(2.0) - &circ(&circ(a, a), b)
    }

    /// `U_{a,b}(x) = (a∘x)∘b + (b∘x)∘a - (a∘b)∘x`.
    pub fn u2(a: &ComplexMatrix, b: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
        let t1 = circ(&circ(a, x), b);
        let t2 = circ(&circ(b, x), a);
        let t3 = circ(&circ(a, b), x);
        &(&t1 + &t2) - &t3
    }

    /// Jordan power `a^n` (`a^0` is the identity).
    pub fn power(a: &ComplexMatrix, n: u32) -> ComplexMatrix {
        let mut acc = ComplexMatrix::identity(a.rows());
        for _ in 0..n {
            acc = circ(a, &acc);
        }
        acc
    }

    /// Operator commutation residual `max_x ||a∘(b∘x) - (a∘x)∘b||` over the
    /// canonical real basis; the defect is real linear in `x`, so the basis
    /// check is exact.
    pub fn operator_commutation_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        let shape = a.shape();
        (0..2 * shape.0 * shape.1)
            .map(|k| {
                let x = crate::linalg::realify::real_basis_element(shape, k);
                (&circ(a, &circ(b, &x)) - &circ(&circ(a, &x), b)).frobenius_norm()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    fn e(n: usize, i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::unit(n, n, i, j)
    }

    #[test]
    fn triple_product_examples() {
        let cstar = TripleModel::CStar { n: 2 };
        let id = ComplexMatrix::identity(2);
        assert_eq!(cstar.triple_product(&id, &id, &id).unwrap(), id);

        let rect = TripleModel::Rect { m: 1, n: 2 };
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 0.0]]);
        let b = ComplexMatrix::from_real_rows(&[&[0.0, 1.0]]);
        // a b* = 0 and c b* = 1 with c = b, so only ½ c b* a = ½ a survives
        let got = rect.triple_product(&a, &b, &b).unwrap();
        assert_eq!(got, ComplexMatrix::from_real_rows(&[&[0.5, 0.0]]));

        let jb = TripleModel::JBStar { n: 2 };
        let got = jb.triple_product(&e(2, 0, 0), &id, &e(2, 1, 1)).unwrap();
        assert!(got.max_abs() < 1e-15);
    }

    #[test]
    fn jbstar_product_agrees_with_associative_formula() {
        let jb = TripleModel::JBStar { n: 3 };
        let cs = TripleModel::CStar { n: 3 };
        let f = |s: f64| {
            ComplexMatrix::from_fn(3, 3, |i, j| {
                C64::new(
                    (s + i as f64 * 1.3 - j as f64).sin(),
                    (s * j as f64 + i as f64).cos(),
                )
            })
        };
        let (a, b, c) = (f(0.1), f(0.7), f(1.9));
        let d = &jb.triple_product(&a, &b, &c).unwrap() - &cs.triple_product(&a, &b, &c).unwrap();
        assert!(d.max_abs() < 1e-13);
    }

    #[test]
    fn jordan_ops_examples() {
        let jb = TripleModel::JBStar { n: 2 };
        let ops = jb.jordan_ops(&e(2, 0, 0), &e(2, 0, 1)).unwrap();
        assert_eq!(ops.product, e(2, 0, 1).scale_real(0.5));
        assert_eq!(ops.t_map, ops.product);

        let b = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(1.0 + i as f64, j as f64 - 0.5));
        let p = e(2, 0, 0);
        let upb = jb.jordan_ops(&p, &b).unwrap().u_map;
        assert!((&upb - &(&(&p * &b) * &p)).max_abs() < 1e-15);

        let uib = jb
            .jordan_ops(&ComplexMatrix::identity(2), &b)
            .unwrap()
            .u_map;
        assert!((&uib - &b).max_abs() < 1e-15);

        assert!(TripleModel::CStar { n: 2 }.jordan_ops(&p, &b).is_err());
    }

    #[test]
    fn materialized_maps() {
        let cs = TripleModel::CStar { n: 2 };
        let zero = cs.materialize_l(&cs.zero(), &e(2, 0, 1)).unwrap();
        assert_eq!(zero.matrix.max_abs(), 0.0);

        let q = cs.materialize_q(&e(2, 0, 0)).unwrap();
        assert_eq!(q.rank(), 2); // complex rank one
        let img = q.image(1e-10).unwrap();
        assert!(img.contains(&e(2, 0, 0), 1e-12));

        let l = cs
            .materialize_l(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2))
            .unwrap();
        assert!(l.distance(&RealifiedMap::identity((2, 2))).unwrap() < 1e-15);
    }

    #[test]
    fn shape_errors() {
        let cs = TripleModel::CStar { n: 2 };
        let bad = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            cs.triple_product(&bad, &bad, &bad),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn descriptor_json() {
        let m: TripleModel = serde_json::from_str(r#"{"kind":"rect","m":2,"n":3}"#).unwrap();
        assert_eq!(m, TripleModel::Rect { m: 2, n: 3 });
        assert!(serde_json::from_str::<TripleModel>(r#"{"kind":"cstar","m":2,"n":3}"#).is_err());
        let s = serde_json::to_string(&TripleModel::JBStar { n: 4 }).unwrap();
        assert_eq!(s, r#"{"kind":"jbstar","m":4,"n":4}"#);
    }
}
