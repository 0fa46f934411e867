//! Dense univariate polynomials over ℚ with Sturm-sequence root counting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Remainder of Euclidean division by a nonzero divisor.
    pub fn rem(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.lead().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = r.last().unwrap() / lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    fn scaled_to_unit_lead(self) -> Poly {
        match self.lead() {
            Some(l) => {
                let s = l.abs();
                Poly::new(self.coeffs.into_iter().map(|c| c / &s).collect())
            }
            None => self,
        }
    }

    /// Sign of `p(t)` as `t → +∞`.
    pub fn sign_at_infinity(&self) -> i8 {
        self.lead().map_or(0, sign)
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.lead().expect("bound of the zero polynomial").abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        m + BigRational::one()
    }
}

pub fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Canonical Sturm sequence `p, p', -rem(p, p'), ...`.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let mut polys = vec![p.clone(), p.derivative()];
        while !polys.last().unwrap().is_zero() {
            let n = polys.len();
            let r = polys[n - 2].rem(&polys[n - 1]);
            let next = Poly::new(r.coeffs.into_iter().map(|c| -c).collect());
            // positive rescaling keeps signs and tames coefficient growth
            polys.push(next.scaled_to_unit_lead());
        }
        polys.pop();
        Self { polys }
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.polys.iter().map(|p| sign(&p.eval(x))))
    }

    pub fn variations_at_infinity(&self) -> usize {
        Self::variations(self.polys.iter().map(Poly::sign_at_infinity))
    }

    /// Number of distinct roots in `(a, b]`, `b = None` meaning `+∞`.
    /// Requires `a` not to be a root.
    pub fn count_roots(&self, a: &BigRational, b: Option<&BigRational>) -> usize {
        let va = self.variations_at(a);
        let vb = match b {
            Some(b) => self.variations_at(b),
            None => self.variations_at_infinity(),
        };
        va.saturating_sub(vb)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolationDepthExceeded;

/// Isolates the distinct roots of `p` in `(lo, hi]` into disjoint intervals
/// `(a_i, b_i]`, each holding exactly one root, with no endpoint a root.
/// `p(lo)` and `p(hi)` must be nonzero.
pub fn isolate_roots(
    p: &Poly,
    chain: &SturmChain,
    lo: &BigRational,
    hi: &BigRational,
    depth_limit: usize,
) -> Result<Vec<(BigRational, BigRational)>, IsolationDepthExceeded> {
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), 0usize)];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((a, b, depth)) = stack.pop() {
        match chain.count_roots(&a, Some(&b)) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                if depth >= depth_limit {
                    return Err(IsolationDepthExceeded);
                }
                let mut m = (&a + &b) / &two;
                let mut k = 3i64;
                // step off an exact root so every endpoint stays a non-root
                while p.eval(&m).is_zero() {
                    m = &a + (&b - &a) * BigRational::new(BigInt::from(k), BigInt::from(2 * k + 1));
                    k += 1;
                }
                // push right first so intervals pop in ascending order
                stack.push((m.clone(), b, depth + 1));
                stack.push((a, m, depth + 1));
            }
        }
    }
    Ok(out)
}
