use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{format_rational, QMatrix, Rational};
use crate::error::Result;

/// Univariate polynomial with rational coefficients, lowest degree first.
/// Trailing zero coefficients are never stored; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    /// `(x - r)`.
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Synthetic division by `(x - r)`: returns quotient and remainder.
    pub fn div_linear(&self, r: &Rational) -> (QPoly, Rational) {
        if self.coeffs.len() <= 1 {
            return (
                QPoly::new(Vec::new()),
                self.coeffs.first().cloned().unwrap_or_else(Rational::zero),
            );
        }
        let mut quotient = vec![Rational::zero(); self.coeffs.len() - 1];
        let mut carry = Rational::zero();
        for i in (0..self.coeffs.len()).rev() {
            let v = &self.coeffs[i] + &carry * r;
            if i == 0 {
                return (QPoly::new(quotient), v);
            }
            quotient[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    fn monic(&self) -> QPoly {
        match self.leading() {
            Some(l) if !l.is_one() => {
                let inv = l.recip();
                QPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
            _ => self.clone(),
        }
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let coeff = if mag.is_integer() {
                format_rational(&mag)
            } else {
                format!("({})", format_rational(&mag))
            };
            match deg {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coeff}")?;
                    }
                    if deg == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Monic characteristic polynomial `det(xI - M)` via the Faddeev-LeVerrier
/// recurrence, exact over the rationals.
pub fn char_poly(m: &QMatrix) -> Result<QPoly> {
    let n = m.square_size()?;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut aux = QMatrix::zeros(n, n);
    for k in 1..=n {
        // aux_k = M * aux_{k-1} + c_{n-k+1} I
        let mut next = m.mul(&aux)?;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let trace = m.mul(&next)?.trace();
        coeffs[n - k] = -trace / Rational::from_integer(BigInt::from(k));
        aux = next;
    }
    Ok(QPoly::new(coeffs))
}

/// Rational roots of a polynomial together with what is left after
/// deflating all of them out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    /// Distinct roots in ascending order with their multiplicities.
    pub roots: Vec<(Rational, usize)>,
    /// Monic cofactor without rational roots; the constant 1 when `splits()`.
    pub residual: QPoly,
}

impl RationalRoots {
    pub fn splits(&self) -> bool {
        self.residual.degree() == Some(0)
    }

    pub fn multiplicity(&self, r: &Rational) -> usize {
        self.roots
            .iter()
            .find(|(v, _)| v == r)
            .map_or(0, |(_, m)| *m)
    }
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return Vec::new();
    }
    if let Some(small) = n.to_u64() {
        let mut low = Vec::new();
        let mut high = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                low.push(BigUint::from(d));
                if d != small / d {
                    high.push(BigUint::from(small / d));
                }
            }
            d += 1;
        }
        low.extend(high.into_iter().rev());
        return low;
    }
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = BigUint::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                high.push(q);
            }
            low.push(d.clone());
        }
        d += 1u32;
    }
    low.extend(high.into_iter().rev());
    low
}

/// Finds every rational root of `p` with exact multiplicity.
///
/// Candidates are `±d/e` with `d` dividing the constant term and `e` the
/// leading coefficient of the primitive integer form (after removing the
/// power of `x`); each root is deflated out as long as it keeps vanishing.
/// The zero polynomial yields no roots and a zero residual.
pub fn rational_roots(p: &QPoly) -> RationalRoots {
    if p.is_zero() {
        return RationalRoots {
            roots: Vec::new(),
            residual: p.clone(),
        };
    }
    let mut current = p.monic();
    let mut roots = Vec::new();

    let zero_mult = current.coeffs.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
        current = QPoly::new(current.coeffs[zero_mult..].to_vec());
    }

    if current.degree().unwrap_or(0) > 0 {
        let lcm = current
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = current
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let constant = (&ints[0] / &content).magnitude().clone();
        let lead = (ints.last().unwrap() / &content).magnitude().clone();

        let mut candidates = BTreeSet::new();
        let leads = divisors(&lead);
        for d in divisors(&constant) {
            for e in &leads {
                let r = Rational::new(BigInt::from(d.clone()), BigInt::from(e.clone()));
                candidates.insert(-r.clone());
                candidates.insert(r);
            }
        }
        for c in candidates {
            let mut mult = 0;
            loop {
                if current.degree().unwrap_or(0) == 0 {
                    break;
                }
                let (q, rem) = current.div_linear(&c);
                if !rem.is_zero() {
                    break;
                }
                current = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
            if current.degree().unwrap_or(0) == 0 {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    RationalRoots {
        roots,
        residual: current.monic(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::int;

    #[test]
    fn char_poly_examples() {
        let nil = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(char_poly(&nil).unwrap(), QPoly::from_i64(&[0, 0, 1]));
        let d = QMatrix::diagonal(&[int(1), int(2)]);
        assert_eq!(char_poly(&d).unwrap(), QPoly::from_i64(&[2, -3, 1]));
        assert!(char_poly(&QMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn companion_matrix_recovers_polynomial() {
        // x^3 - 2x + 5: companion with last column -(5, -2, 0).
        let comp = QMatrix::from_i64(&[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        // Cofactor expansion of det(xI - C) along the last column gives
        // x^2 * x + (-2) * x + 5.
        assert_eq!(char_poly(&comp).unwrap(), QPoly::from_i64(&[5, -2, 0, 1]));
    }

    #[test]
    fn roots_examples() {
        let r = rational_roots(&QPoly::from_i64(&[2, -3, 1]));
        assert_eq!(r.roots, vec![(int(1), 1), (int(2), 1)]);
        assert!(r.splits());

        let r = rational_roots(&QPoly::from_i64(&[0, 0, 1]));
        assert_eq!(r.roots, vec![(int(0), 2)]);
        assert!(r.splits());

        let r = rational_roots(&QPoly::from_i64(&[-2, 0, 1]));
        assert!(r.roots.is_empty());
        assert!(!r.splits());
        assert_eq!(r.residual.to_string(), "x^2 - 2");
    }

    #[test]
    fn roots_with_fractions_and_multiplicity() {
        // (2x - 1)^2 (x + 3) = 4x^3 + 8x^2 - 11x + 3
        let p = QPoly::from_i64(&[3, -11, 8, 4]);
        let r = rational_roots(&p);
        assert_eq!(
            r.roots,
            vec![(int(-3), 1), (Rational::new(1.into(), 2.into()), 2)]
        );
        assert!(r.splits());
    }

    #[test]
    fn partial_split_keeps_irreducible_factor() {
        // (x - 1)(x^2 + 1)
        let p = QPoly::from_i64(&[-1, 1, -1, 1]);
        let r = rational_roots(&p);
        assert_eq!(r.roots, vec![(int(1), 1)]);
        assert_eq!(r.residual.to_string(), "x^2 + 1");
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::from_i64(&[2, -3, 1]).to_string(), "x^2 - 3x + 2");
        assert_eq!(QPoly::from_i64(&[0, -1]).to_string(), "-x");
        assert_eq!(QPoly::new(vec![]).to_string(), "0");
        let half = QPoly::new(vec![Rational::new(1.into(), 2.into()), int(1)]);
        assert_eq!(half.to_string(), "x + (1/2)");
    }
}
