use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intfactor::positive_divisors;
use super::{Field, MathError, Matrix, Scalar};

/// Univariate polynomial, coefficients lowest degree first, with no
/// trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

/// Output of [`Polynomial::linear_root_split`]:
/// `p = lc(p) · ∏ (x - c)^d · cofactor` with `cofactor` root-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    pub roots: Vec<(Scalar, usize)>,
    pub cofactor: Polynomial,
}

impl Polynomial {
    pub fn from_coeffs(field: Field, mut coeffs: Vec<Scalar>) -> Polynomial {
        assert!(
            coeffs.iter().all(|c| c.field() == field),
            "coefficient field mismatch"
        );
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Polynomial {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Polynomial {
        Polynomial::constant(field.one())
    }

    pub fn x(field: Field) -> Polynomial {
        Polynomial::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::from_coeffs(c.field(), vec![c])
    }

    /// `x - c`.
    pub fn linear(c: &Scalar) -> Polynomial {
        Polynomial::from_coeffs(c.field(), vec![-c, c.field().one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::from_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// `p(M)` by Horner's scheme.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square(), "polynomial of a non-square matrix");
        let n = m.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            acc = &acc + &Matrix::identity(self.field, n).scale(c);
        }
        acc
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        let mut acc = Polynomial::one(self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn divrem(&self, b: &Polynomial) -> Result<(Polynomial, Polynomial), MathError> {
        let Some(db) = b.degree() else {
            return Err(MathError::ZeroDivisor);
        };
        let inv = b
            .leading()
            .unwrap()
            .inv()
            .expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let Some(da) = self.degree().filter(|&d| d >= db) else {
            return Ok((Polynomial::zero(self.field), self.clone()));
        };
        let mut q = vec![self.field.zero(); da - db + 1];
        for shift in (0..=da - db).rev() {
            let c = &r[shift + db] * &inv;
            if c.is_zero() {
                continue;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&c * bc);
            }
            q[shift] = c;
        }
        r.truncate(db);
        Ok((
            Polynomial::from_coeffs(self.field, q),
            Polynomial::from_coeffs(self.field, r),
        ))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic lcm; zero if either argument is zero.
    pub fn lcm(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let g = self.gcd(other);
        let (q, _) = self.divrem(&g).expect("nonzero gcd");
        (&q * other).monic()
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// Extracts every linear factor with a root in the field.
    ///
    /// Over the rationals the candidates are `±a/b` with `a | g(0)` and
    /// `b | lc(g)` for the primitive integer form `g` (after stripping `x^k`),
    /// filtered by the Cauchy bound. Over a prime field every residue is tried.
    pub fn linear_root_split(&self) -> Result<RootSplit, MathError> {
        if self.is_zero() {
            return Err(MathError::ZeroPolynomial);
        }
        let mut rest = self.monic();
        let mut roots = Vec::new();

        let zeros = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            rest = Polynomial::from_coeffs(self.field, rest.coeffs[zeros..].to_vec());
            roots.push((self.field.zero(), zeros));
        }

        let candidates: Vec<Scalar> = match self.field {
            Field::Rational => rational_candidates(&rest),
            Field::Prime(p) => (1..p as i64).map(|r| self.field.from_i64(r)).collect(),
        };
        for c in candidates {
            if rest.degree() == Some(0) {
                break;
            }
            let lin = Polynomial::linear(&c);
            let mut mult = 0;
            while rest.eval(&c).is_zero() {
                rest = rest.divrem(&lin)?.0;
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
        }
        roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        Ok(RootSplit {
            roots,
            cofactor: rest,
        })
    }

    /// `lc · ∏ (x - c)^d · cofactor`, the inverse of `linear_root_split`.
    pub fn from_split(lc: &Scalar, split: &RootSplit) -> Polynomial {
        let mut acc = split.cofactor.scale(lc);
        for (c, d) in &split.roots {
            acc = &acc * &Polynomial::linear(c).pow(*d);
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        Polynomial::from_coeffs(self.field, coeffs)
    }
}

/// Rational root candidates for a monic rational polynomial with
/// nonzero constant term, sorted ascending.
fn rational_candidates(p: &Polynomial) -> Vec<Scalar> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let rats: Vec<&BigRational> = p
        .coeffs
        .iter()
        .map(|c| c.as_rational().expect("rational coefficient"))
        .collect();
    let den_lcm = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = rats
        .iter()
        .map(|q| q.numer() * (&den_lcm / q.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in &mut ints {
        *c /= &content;
    }
    let lead = ints.last().unwrap().clone();
    let constant = ints[0].clone();
    // Cauchy bound: |root| <= 1 + max |g_i / g_n|
    let bound = ints[..ints.len() - 1]
        .iter()
        .map(|c| BigRational::new(c.abs(), lead.abs()))
        .max()
        .unwrap_or_else(BigRational::zero)
        + BigRational::one();
    let numerators = positive_divisors(&constant);
    let denominators = positive_divisors(&lead);
    let mut out = BTreeSet::new();
    for b in &denominators {
        for a in &numerators {
            let c = BigRational::new(a.clone(), b.clone());
            if c > bound {
                break;
            }
            out.insert(-c.clone());
            out.insert(c);
        }
    }
    out.into_iter().map(Scalar::Rational).collect()
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "polynomial field mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = rhs.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        Polynomial::from_coeffs(self.field, coeffs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "polynomial field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::from_coeffs(self.field, out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) if self.field.is_rational() => (true, m.to_string()),
                _ => (false, text),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}*x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}
