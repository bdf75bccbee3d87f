//! Exact univariate polynomials over the rationals and the real-root
//! predicates built on Sturm sequences.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("undefined root count: zero polynomial")]
    ZeroPolynomial,
    #[error("not real-rooted")]
    NotRealRooted,
    #[error("degree {degree} exceeds dimension {dim}")]
    DegreeExceeds { degree: usize, dim: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("lemma precondition failed: {0}")]
    Precondition(&'static str),
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, PolyError> {
    let s = s.trim();
    let bad = || PolyError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Polynomial in `t` with exact rational coefficients, lowest degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<Rat>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        Self::term(Rat::one(), k)
    }

    pub fn term(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(it: I) -> Self {
        Self::new(it.into_iter().map(rat).collect())
    }

    pub fn from_bigints<I: IntoIterator<Item = BigInt>>(it: I) -> Self {
        Self::new(it.into_iter().map(Rat::from_integer).collect())
    }

    /// `(c + t)` for rational `c`.
    pub fn linear(c: Rat) -> Self {
        Self::new(vec![c, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Largest `k` with `t^k` dividing `self`; `None` for zero.
    pub fn t_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn divisible_by_t_pow(&self, k: usize) -> bool {
        self.t_valuation().is_none_or(|v| v >= k)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Integer coefficients if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExactPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        ExactPoly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &ExactPoly) -> Result<(ExactPoly, ExactPoly), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lc = d.leading_coeff().unwrap().clone();
        let mut r = self.coeffs.clone();
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((Self::zero(), self.clone())),
        };
        let mut q = vec![Rat::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let c = &r[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, d: &ExactPoly) -> Option<ExactPoly> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &ExactPoly) -> ExactPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_scale();
        }
        a.monic()
    }

    /// Positive rescaling that clears denominators and content. Keeps the
    /// sign pattern, which is all Sturm counting needs.
    fn primitive_scale(&self) -> ExactPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        Self::new(
            ints.into_iter()
                .map(|c| Rat::from_integer(c / &g))
                .collect(),
        )
    }

    /// Square-free factorisation (Yun): pairs `(s_k, k)` with
    /// `self = lc * prod s_k^k`, each `s_k` monic, square-free and
    /// pairwise coprime. Constant factors are omitted.
    pub fn square_free_decomposition(&self) -> Vec<(ExactPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().is_none_or(|d| d == 0) {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let c = df.div_exact(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while b.degree().is_some_and(|deg| deg > 0) {
            let a = b.gcd(&d);
            let nb = b.div_exact(&a).unwrap();
            let nc = d.div_exact(&a).unwrap();
            if a.degree().is_some_and(|deg| deg > 0) {
                out.push((a, k));
            }
            d = &nc - &nb.derivative();
            b = nb;
            k += 1;
        }
        out
    }

    /// `self / gcd(self, self')`, monic.
    pub fn square_free_part(&self) -> ExactPoly {
        if self.degree().is_none_or(|d| d == 0) {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).unwrap().monic()
    }

    /// Coefficients in the binomial basis: `self(t) = sum a_k C(t, k)`.
    pub fn to_binomial_basis(&self) -> Vec<Rat> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut vals: Vec<Rat> = (0..=deg).map(|i| self.eval(&rat(i as i64))).collect();
        let mut out = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            out.push(vals[0].clone());
            vals = vals.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    /// Inverse of [`ExactPoly::to_binomial_basis`].
    pub fn from_binomial_basis(coeffs: &[Rat]) -> ExactPoly {
        let mut acc = ExactPoly::zero();
        for (k, a) in coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc = &acc + &binomial_t(k).scale(a);
            }
        }
        acc
    }
}

/// `C(t, k) = t(t-1)...(t-k+1)/k!` as a polynomial in `t`.
pub fn binomial_t(k: usize) -> ExactPoly {
    let mut p = ExactPoly::one();
    let mut fact = BigInt::one();
    for i in 0..k {
        p = &p * &ExactPoly::linear(-rat(i as i64));
        fact *= BigInt::from(i + 1);
    }
    p.scale(&Rat::from_integer(fact).recip())
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly[{self}]")
    }
}

/// Space-separated coefficient list, lowest degree first (`0` for zero).
impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for ExactPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .map(parse_rat)
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(PolyError::Parse(s.to_string()));
        }
        Ok(ExactPoly::new(coeffs))
    }
}

impl<'a> Add<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        ExactPoly::new(v)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

// ---------------------------------------------------------------------------
// Sturm sequences and root counting

/// Where to count roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootRange {
    Whole,
    /// `[lo, hi]`
    Closed(Rat, Rat),
    /// `(lo, hi]`
    HalfOpen(Rat, Rat),
}

/// Canonical Sturm chain `s, s', -rem(...), ...` of the square-free part `s`,
/// each member rescaled by a positive constant. Working on `s` keeps the
/// count right when an endpoint is a repeated root.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<ExactPoly>,
}

impl SturmChain {
    pub fn new(p: &ExactPoly) -> Self {
        let s = p.square_free_part();
        let d = s.derivative().primitive_scale();
        let mut chain = vec![s.primitive_scale()];
        if !d.is_zero() {
            chain.push(d);
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).unwrap();
                if r.is_zero() {
                    break;
                }
                chain.push((-&r).primitive_scale());
            }
        }
        SturmChain { chain }
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        Self::variations(self.chain.iter().map(|p| p.eval(x).cmp(&Rat::zero())))
    }

    fn variations_at_pos_inf(&self) -> usize {
        Self::variations(
            self.chain
                .iter()
                .map(|p| p.leading_coeff().unwrap().cmp(&Rat::zero())),
        )
    }

    fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = p.leading_coeff().unwrap().cmp(&Rat::zero());
            if p.degree().unwrap() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count_half_open(&self, lo: &Rat, hi: &Rat) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations_at(lo) - self.variations_at(hi)
    }

    pub fn count_whole(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// Number of distinct real roots of `p` in `range`.
pub fn sturm_real_root_count(p: &ExactPoly, range: &RootRange) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let chain = SturmChain::new(p);
    Ok(match range {
        RootRange::Whole => chain.count_whole(),
        RootRange::HalfOpen(lo, hi) => chain.count_half_open(lo, hi),
        RootRange::Closed(lo, hi) => {
            if lo > hi {
                0
            } else {
                chain.count_half_open(lo, hi) + usize::from(p.eval(lo).is_zero())
            }
        }
    })
}

/// Real roots counted with multiplicity.
pub fn real_root_count_with_multiplicity(p: &ExactPoly) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut total = 0;
    for (s, k) in p.square_free_decomposition() {
        total += k * sturm_real_root_count(&s, &RootRange::Whole)?;
    }
    Ok(total)
}

pub fn is_real_rooted(p: &ExactPoly) -> Result<bool, PolyError> {
    let deg = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    Ok(real_root_count_with_multiplicity(p)? == deg)
}

/// Whether every root of the real-rooted `p` lies in `[lo, hi]`.
pub fn roots_in_interval(p: &ExactPoly, lo: &Rat, hi: &Rat) -> Result<bool, PolyError> {
    if !is_real_rooted(p)? {
        return Err(PolyError::NotRealRooted);
    }
    let total = sturm_real_root_count(p, &RootRange::Whole)?;
    let inside = sturm_real_root_count(p, &RootRange::Closed(lo.clone(), hi.clone()))?;
    Ok(total == inside)
}

/// `[-1, 0]`-rootedness, the verdict most suites need.
pub fn is_unit_interval_rooted(p: &ExactPoly) -> Result<bool, PolyError> {
    if !is_real_rooted(p)? {
        return Ok(false);
    }
    roots_in_interval(p, &rat(-1), &Rat::zero())
}

// ---------------------------------------------------------------------------
// Root isolation

/// Disjoint intervals `(lo, hi]`, ascending, each holding one distinct real
/// root, with the root's multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootIsolation {
    pub intervals: Vec<(Rat, Rat)>,
    pub multiplicities: Vec<usize>,
}

/// Power of two strictly above every root's absolute value (Cauchy bound).
fn root_bound(p: &ExactPoly) -> Rat {
    let lc = p.leading_coeff().unwrap().abs();
    let mut m = Rat::zero();
    for c in &p.coeffs[..p.coeffs.len() - 1] {
        let r = c.abs() / &lc;
        if r > m {
            m = r;
        }
    }
    let bound = m + Rat::one();
    let mut b = Rat::one();
    while b <= bound {
        b *= rat(2);
    }
    b
}

/// Bisects `(lo, hi]` until every piece holds exactly one root of the
/// square-free `sqf`. Endpoints stay dyadic.
fn isolate_square_free(sqf: &ExactPoly) -> Vec<(Rat, Rat)> {
    let chain = SturmChain::new(sqf);
    let b = root_bound(sqf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = rat(2);
    while let Some((lo, hi)) = stack.pop() {
        match chain.count_half_open(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Jointly isolates the real roots of several nonzero polynomials.
///
/// Returns ascending intervals, each containing one distinct root of the
/// product, and for each interval the multiplicity of that root in every
/// input (zero when the input does not vanish there).
pub fn isolate_joint(polys: &[&ExactPoly]) -> Result<Vec<((Rat, Rat), Vec<usize>)>, PolyError> {
    let mut prod = ExactPoly::one();
    for p in polys {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        prod = &prod * *p;
    }
    if prod.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let intervals = isolate_square_free(&prod.square_free_part());
    let factors: Vec<Vec<(SturmChain, usize)>> = polys
        .iter()
        .map(|p| {
            p.square_free_decomposition()
                .into_iter()
                .map(|(s, k)| (SturmChain::new(&s), k))
                .collect()
        })
        .collect();
    Ok(intervals
        .into_iter()
        .map(|(lo, hi)| {
            let mults = factors
                .iter()
                .map(|fs| {
                    fs.iter()
                        .find(|(c, _)| c.count_half_open(&lo, &hi) > 0)
                        .map_or(0, |(_, k)| *k)
                })
                .collect();
            ((lo, hi), mults)
        })
        .collect())
}

pub fn isolate_real_roots(p: &ExactPoly) -> Result<RootIsolation, PolyError> {
    let joint = isolate_joint(&[p])?;
    let (intervals, multiplicities) = joint.into_iter().map(|(iv, m)| (iv, m[0])).unzip();
    Ok(RootIsolation {
        intervals,
        multiplicities,
    })
}

// ---------------------------------------------------------------------------
// Interlacing

/// `g ⪯ f`: with roots `α_1 ≥ α_2 ≥ …` of `f` and `β_1 ≥ β_2 ≥ …` of `g`
/// (with multiplicity), `… ≤ β_2 ≤ α_2 ≤ β_1 ≤ α_1`.
///
/// The zero polynomial interlaces and is interlaced by every real-rooted
/// polynomial. Degrees more than one apart give `false`.
pub fn interlaces(g: &ExactPoly, f: &ExactPoly) -> Result<bool, PolyError> {
    if g.is_zero() || f.is_zero() {
        for p in [g, f] {
            if !p.is_zero() && !is_real_rooted(p)? {
                return Err(PolyError::NotRealRooted);
            }
        }
        return Ok(true);
    }
    if !is_real_rooted(g)? || !is_real_rooted(f)? {
        return Err(PolyError::NotRealRooted);
    }
    let (dg, df) = (g.degree().unwrap(), f.degree().unwrap());
    if dg.abs_diff(df) > 1 {
        return Ok(false);
    }
    // Descending root lists as positions in the joint isolation (equal
    // positions are equal roots).
    let joint = isolate_joint(&[f, g])?;
    let mut alpha = Vec::with_capacity(df);
    let mut beta = Vec::with_capacity(dg);
    for (pos, (_, m)) in joint.iter().enumerate().rev() {
        alpha.extend(std::iter::repeat_n(pos, m[0]));
        beta.extend(std::iter::repeat_n(pos, m[1]));
    }
    let ok_upper = alpha.iter().zip(&beta).all(|(a, b)| b <= a);
    let ok_lower = beta.iter().zip(alpha.iter().skip(1)).all(|(b, a)| a <= b);
    Ok(ok_upper && ok_lower)
}

/// Checks `g ⪯ f − λ·t·g ⪯ f` under the hypotheses of the interlacing
/// subtraction lemma; violated hypotheses are reported as errors.
pub fn check_lemma21_iv(f: &ExactPoly, g: &ExactPoly, lambda: &Rat) -> Result<bool, PolyError> {
    if lambda.is_negative() {
        return Err(PolyError::Precondition("lambda must be nonnegative"));
    }
    if !f.has_nonnegative_coeffs() || !g.has_nonnegative_coeffs() {
        return Err(PolyError::Precondition(
            "f and g need nonnegative coefficients",
        ));
    }
    match (f.degree(), g.degree()) {
        (Some(a), Some(b)) if a == b + 1 => {}
        _ => return Err(PolyError::Precondition("deg f must equal deg g + 1")),
    }
    if !interlaces(g, f)? {
        return Err(PolyError::Precondition("g must interlace f"));
    }
    let reduced = f - &g.shift(1).scale(lambda);
    if !reduced.leading_coeff().is_some_and(|c| c.is_positive()) {
        return Err(PolyError::Precondition(
            "leading coefficient of f - λtg must be positive",
        ));
    }
    Ok(interlaces(g, &reduced)? && interlaces(&reduced, f)?)
}

/// All 2×2 minors nonnegative (and all entries nonnegative).
pub fn is_tp2(m: &[Vec<Rat>]) -> bool {
    if m.iter().flatten().any(|x| x.is_negative()) {
        return false;
    }
    for i in 0..m.len() {
        for k in i + 1..m.len() {
            let cols = m[i].len().min(m[k].len());
            for j in 0..cols {
                for l in j + 1..cols {
                    if &m[i][j] * &m[k][l] < &m[i][l] * &m[k][j] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// f/h transforms

/// `h(t) = (1-t)^n f(t/(1-t)) = Σ f_k t^k (1-t)^(n-k)`.
pub fn h_from_f(f: &ExactPoly, n: usize) -> Result<ExactPoly, PolyError> {
    transform(f, n, -1)
}

/// Inverse of [`h_from_f`]: `f(t) = Σ h_k t^k (1+t)^(n-k)`.
pub fn f_from_h(h: &ExactPoly, n: usize) -> Result<ExactPoly, PolyError> {
    transform(h, n, 1)
}

fn transform(p: &ExactPoly, n: usize, sign: i64) -> Result<ExactPoly, PolyError> {
    if let Some(d) = p.degree() {
        if d > n {
            return Err(PolyError::DegreeExceeds { degree: d, dim: n });
        }
    }
    let base = ExactPoly::from_ints([1, sign]);
    let mut acc = ExactPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &base.pow((n - k) as u32).shift(k).scale(c);
        }
    }
    Ok(acc)
}
