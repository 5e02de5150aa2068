//! Finite fields `F_{p^e}` in a polynomial basis, relative extensions
//! `F_{q^s} / F_q`, trace and norm maps.
//!
//! An element is a [`Elem`] code: the coefficient vector `c_0 + c_1 x + ...`
//! packed as the base-`p` integer `c_0 + c_1 p + c_2 p^2 + ...`. Prime-field
//! elements therefore have codes `0..p`, and the integer order on codes is
//! the canonical element order used for every deterministic choice
//! (modulus, generator, enumeration).
//!
//! Field descriptors are cheap to clone. The arithmetic core of a field
//! (modulus, generator, log/antilog tables) is shared through a
//! process-wide cache, so rebuilding `F_{q^s}` for every sum is free after
//! the first time.

mod element;
pub mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ring::Ring;

pub use element::FieldElement;
pub use poly::{enumerate_monic_polys, MonicPolys, PolyOverFq};

/// Default cap on the number of elements or polynomials visited by one
/// exhaustive pass.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Log/antilog tables are built for fields up to this size.
const TABLE_LIMIT: u64 = 1 << 23;

const MAX_DIGITS: usize = 32;

/// Packed coefficient vector of a field element (see module docs).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

/// Arithmetic core of `F_{p^e}` for one fixed modulus.
struct Absolute {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    trace_basis: Vec<u32>,
    // bit i set iff Tr(x^i) = 1; only meaningful for p = 2
    trace_mask: u32,
    generator: u32,
    tables: OnceLock<Option<Tables>>,
}

impl Absolute {
    fn build(p: u32, modulus: Vec<u32>) -> Absolute {
        let e = (modulus.len() - 1) as u32;
        let mut pow_p = Vec::with_capacity(e as usize + 1);
        let mut acc = 1u32;
        for i in 0..=e {
            pow_p.push(acc);
            if i < e {
                acc = acc.wrapping_mul(p);
            }
        }
        let q = pow_p[e as usize];
        let mut abs = Absolute {
            p,
            e,
            q,
            modulus,
            pow_p,
            trace_basis: Vec::new(),
            trace_mask: 0,
            generator: 1,
            tables: OnceLock::new(),
        };
        abs.trace_basis = (0..e)
            .map(|i| {
                let xi = abs.pow_p[i as usize];
                let mut y = xi;
                let mut t = 0u32;
                for _ in 0..e {
                    t = abs.add(t, y);
                    y = abs.pow_slow(y, p as u64);
                }
                debug_assert!(t < p, "trace must land in the prime field");
                t
            })
            .collect();
        if p == 2 {
            abs.trace_mask = abs
                .trace_basis
                .iter()
                .enumerate()
                .filter(|(_, &t)| t == 1)
                .fold(0, |m, (i, _)| m | (1 << i));
        }
        abs.generator = abs.find_generator();
        abs
    }

    fn digits(&self, mut x: u32) -> [u32; MAX_DIGITS] {
        let mut d = [0u32; MAX_DIGITS];
        for slot in d.iter_mut().take(self.e as usize) {
            *slot = x % self.p;
            x /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter()
            .take(self.e as usize)
            .enumerate()
            .map(|(i, &c)| c * self.pow_p[i])
            .sum()
    }

    fn add(&self, x: u32, y: u32) -> u32 {
        if self.p == 2 {
            return x ^ y;
        }
        let (mut a, mut b) = (x, y);
        let mut r = 0;
        for i in 0..self.e as usize {
            let s = a % self.p + b % self.p;
            let d = if s >= self.p { s - self.p } else { s };
            r += d * self.pow_p[i];
            a /= self.p;
            b /= self.p;
        }
        r
    }

    fn neg(&self, x: u32) -> u32 {
        if self.p == 2 {
            return x;
        }
        let mut a = x;
        let mut r = 0;
        for i in 0..self.e as usize {
            let d = a % self.p;
            if d != 0 {
                r += (self.p - d) * self.pow_p[i];
            }
            a /= self.p;
        }
        r
    }

    fn mul_slow(&self, x: u32, y: u32) -> u32 {
        let e = self.e as usize;
        if self.p == 2 {
            let mut r: u64 = 0;
            for i in 0..e {
                if (y >> i) & 1 == 1 {
                    r ^= (x as u64) << i;
                }
            }
            let m: u64 = self
                .modulus
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &c)| acc | ((c as u64) << i));
            for i in (e..2 * e).rev() {
                if (r >> i) & 1 == 1 {
                    r ^= m << (i - e);
                }
            }
            return r as u32;
        }
        let p = self.p as u64;
        let a = self.digits(x);
        let b = self.digits(y);
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        for i in (e..2 * e).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..=e {
                let m = self.modulus[j] as u64;
                let k = i - e + j;
                prod[k] = (prod[k] + (p - c) * m) % p;
            }
        }
        let mut r = 0;
        for i in 0..e {
            r += prod[i] as u32 * self.pow_p[i];
        }
        r
    }

    fn pow_slow(&self, x: u32, mut k: u64) -> u32 {
        let mut base = x;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            k >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> u32 {
        let n = self.q as u64 - 1;
        let primes = prime_factors(n);
        (1..self.q)
            .find(|&c| primes.iter().all(|&r| self.pow_slow(c, n / r) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn abs_trace_slow(&self, x: u32) -> u32 {
        if self.p == 2 {
            return (x & self.trace_mask).count_ones() & 1;
        }
        let d = self.digits(x);
        let mut t = 0u64;
        for i in 0..self.e as usize {
            t += d[i] as u64 * self.trace_basis[i] as u64;
        }
        (t % self.p as u64) as u32
    }

    fn tables(&self) -> Option<&Tables> {
        self.tables
            .get_or_init(|| {
                if (self.q as u64) > TABLE_LIMIT {
                    return None;
                }
                let n = self.q as usize - 1;
                let mut exp = Vec::with_capacity(n);
                let mut log = vec![0u32; self.q as usize];
                let mut trace = Vec::with_capacity(n);
                let mut cur = 1u32;
                for i in 0..n {
                    exp.push(cur);
                    log[cur as usize] = i as u32;
                    trace.push(self.abs_trace_slow(cur));
                    cur = self.mul_slow(cur, self.generator);
                }
                Some(Tables { exp, log, trace })
            })
            .as_ref()
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `f` modulo the monic `g` over `F_p`, coefficients low-degree first.
fn prime_poly_rem(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    while r.len() > dg {
        let c = r.pop().unwrap() % p;
        let top = r.len();
        if c != 0 {
            for j in 0..dg {
                let k = top - dg + j;
                r[k] = (r[k] + (p - c) * g[j] as u64) % p;
            }
        }
    }
    r.into_iter().map(|c| (c % p) as u32).collect()
}

fn monic_from_code(p: u32, degree: usize, mut code: u64) -> Vec<u32> {
    let mut v = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        v.push((code % p as u64) as u32);
        code /= p as u64;
    }
    v.push(1);
    v
}

/// Trial division by every monic polynomial of degree at most deg/2.
fn is_irreducible_over_prime(p: u32, f: &[u32]) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let g = monic_from_code(p, d, code);
            if prime_poly_rem(p, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

type CacheMap = HashMap<(u32, Vec<u32>), Arc<Absolute>>;

fn cache() -> &'static Mutex<CacheMap> {
    static CACHE: OnceLock<Mutex<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn canonical_moduli() -> &'static Mutex<HashMap<(u32, u32), Vec<u32>>> {
    static CANON: OnceLock<Mutex<HashMap<(u32, u32), Vec<u32>>>> = OnceLock::new();
    CANON.get_or_init(|| Mutex::new(HashMap::new()))
}

fn absolute_for(p: u32, modulus: Vec<u32>) -> Arc<Absolute> {
    let key = (p, modulus);
    if let Some(a) = cache().lock().unwrap().get(&key) {
        return a.clone();
    }
    let abs = Arc::new(Absolute::build(p, key.1.clone()));
    cache().lock().unwrap().entry(key).or_insert(abs).clone()
}

/// Least monic irreducible of degree `e` over `F_p`, ordered by the code of
/// its non-leading coefficients.
fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
    if let Some(m) = canonical_moduli().lock().unwrap().get(&(p, e)) {
        return m.clone();
    }
    let m = if e == 1 {
        vec![0, 1]
    } else {
        let count = (p as u64).pow(e);
        (0..count)
            .map(|code| monic_from_code(p, e as usize, code))
            .find(|f| is_irreducible_over_prime(p, f))
            .expect("irreducible polynomials exist in every degree")
    };
    canonical_moduli()
        .lock()
        .unwrap()
        .insert((p, e), m.clone());
    m
}

fn check_size(p: u64, e: u32, budget: u64) -> Result<u64> {
    let size = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
    if size > budget as u128 || size > u32::MAX as u128 {
        return Err(Error::BudgetExceeded {
            requested: size,
            budget,
        });
    }
    Ok(size as u64)
}

struct BaseLink {
    base: Field,
    degree: u32,
    embed: Vec<u32>,
}

/// A finite field descriptor, optionally carrying the relative-extension
/// structure `F_{q^s} / F_q`.
#[derive(Clone)]
pub struct Field {
    abs: Arc<Absolute>,
    budget: u64,
    base: Option<Arc<BaseLink>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.abs.p, self.abs.e)?;
        if let Some(link) = &self.base {
            write!(f, " over {:?} (degree {})", link.base, link.degree)?;
        }
        Ok(())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order())
    }
}

/// `make_field(p, e)` with the default budget.
pub fn make_field(p: u64, e: u32) -> Result<Field> {
    Field::with_budget(p, e, DEFAULT_BUDGET)
}

/// `F_{q^s}` as an extension of `base`.
pub fn make_extension(base: &Field, s: u32) -> Result<Field> {
    base.extension(s)
}

impl Field {
    pub fn new(p: u64, e: u32) -> Result<Field> {
        Field::with_budget(p, e, DEFAULT_BUDGET)
    }

    pub fn with_budget(p: u64, e: u32, budget: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        check_size(p, e, budget)?;
        let p = p as u32;
        let modulus = canonical_modulus(p, e);
        Ok(Field {
            abs: absolute_for(p, modulus),
            budget,
            base: None,
        })
    }

    /// Field with an explicit monic modulus, coefficients low-degree first.
    pub fn with_modulus(p: u64, modulus: &[u32], budget: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidInput("modulus must have positive degree".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::NotMonic);
        }
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::InvalidInput(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        let e = (modulus.len() - 1) as u32;
        check_size(p, e, budget)?;
        let p = p as u32;
        if !is_irreducible_over_prime(p, modulus) {
            return Err(Error::NotIrreducible);
        }
        Ok(Field {
            abs: absolute_for(p, modulus.to_vec()),
            budget,
            base: None,
        })
    }

    /// Parses `"p^e"`, `"p"` or `"p^e/c0,c1,...,ce"` (explicit modulus,
    /// low-degree first).
    pub fn parse(spec: &str, budget: u64) -> Result<Field> {
        let bad = || Error::InvalidInput(format!("cannot parse field spec {spec:?}"));
        let (size, modulus) = match spec.split_once('/') {
            Some((s, m)) => (s.trim(), Some(m.trim())),
            None => (spec.trim(), None),
        };
        let (p, e) = match size.split_once('^') {
            Some((p, e)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                e.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (size.parse::<u64>().map_err(|_| bad())?, 1),
        };
        match modulus {
            None => Field::with_budget(p, e, budget),
            Some(m) => {
                let coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.len() != e as usize + 1 {
                    return Err(Error::InvalidInput(format!(
                        "modulus for {p}^{e} needs {} coefficients",
                        e + 1
                    )));
                }
                Field::with_modulus(p, &coeffs, budget)
            }
        }
    }

    /// `F_{q^s}` with a fixed embedding of `self`: the base generator's
    /// image is the least-code root of the base modulus in the extension.
    pub fn extension(&self, s: u32) -> Result<Field> {
        if s == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        let p = self.abs.p;
        let big_e = self.abs.e.checked_mul(s).ok_or(Error::BudgetExceeded {
            requested: u128::MAX,
            budget: self.budget,
        })?;
        check_size(p as u64, big_e, self.budget)?;
        let big = Field {
            abs: absolute_for(p, canonical_modulus(p, big_e)),
            budget: self.budget,
            base: None,
        };
        let q = self.order();
        let step = (big.order() - 1) / (q - 1);
        let h = big.exp(step);
        let mut candidates = vec![Elem::ZERO];
        let mut cur = Elem::ONE;
        for _ in 0..q - 1 {
            candidates.push(cur);
            cur = big.mul(cur, h);
        }
        let modulus = &self.abs.modulus;
        let theta = candidates
            .into_iter()
            .filter(|&t| {
                let mut acc = Elem::ZERO;
                for &c in modulus.iter().rev() {
                    acc = big.add(big.mul(acc, t), Elem(c));
                }
                acc == Elem::ZERO
            })
            .min()
            .expect("base modulus splits in the extension");
        let mut powers = Vec::with_capacity(self.abs.e as usize);
        let mut pw = Elem::ONE;
        for _ in 0..self.abs.e {
            powers.push(pw);
            pw = big.mul(pw, theta);
        }
        let embed = (0..q as u32)
            .map(|code| {
                let d = self.abs.digits(code);
                let mut acc = Elem::ZERO;
                for (i, &pw) in powers.iter().enumerate() {
                    if d[i] != 0 {
                        acc = big.add(acc, big.mul(Elem(d[i]), pw));
                    }
                }
                acc.0
            })
            .collect();
        Ok(Field {
            base: Some(Arc::new(BaseLink {
                base: self.clone(),
                degree: s,
                embed,
            })),
            ..big
        })
    }

    /// Same field under a different enumeration budget.
    pub fn with_new_budget(&self, budget: u64) -> Field {
        Field {
            budget,
            ..self.clone()
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.abs.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.abs.e
    }

    pub fn order(&self) -> u64 {
        self.abs.q as u64
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn modulus(&self) -> &[u32] {
        &self.abs.modulus
    }

    pub fn generator(&self) -> Elem {
        Elem(self.abs.generator)
    }

    pub fn base(&self) -> Option<&Field> {
        self.base.as_ref().map(|l| &l.base)
    }

    /// Degree over the declared base (1 when there is none).
    pub fn relative_degree(&self) -> u32 {
        self.base.as_ref().map_or(1, |l| l.degree)
    }

    /// Two descriptors share an element representation.
    pub fn same_as(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.abs, &other.abs)
            || (self.abs.p == other.abs.p && self.abs.modulus == other.abs.modulus)
    }

    pub fn check_budget(&self, count: u128) -> Result<()> {
        if count > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                requested: count,
                budget: self.budget,
            });
        }
        Ok(())
    }

    pub fn has_tables(&self) -> bool {
        self.abs.tables().is_some()
    }

    pub fn elem(&self, code: u64) -> Result<Elem> {
        if code >= self.order() {
            return Err(Error::InvalidInput(format!(
                "{code} is not an element code of {self}"
            )));
        }
        Ok(Elem(code as u32))
    }

    pub fn element(&self, x: Elem) -> FieldElement {
        FieldElement::new(self.clone(), x)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() > self.abs.e as usize || digits.iter().any(|&d| d >= self.abs.p) {
            return Err(Error::InvalidInput(format!(
                "{digits:?} is not a coefficient vector of {self}"
            )));
        }
        Ok(Elem(self.abs.from_digits(digits)))
    }

    /// Coefficient vector, low-degree first, length `e`.
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        self.abs.digits(x.0)[..self.abs.e as usize].to_vec()
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.abs.p as i64) as u32)
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.abs.add(x.0, y.0))
    }

    pub fn neg(&self, x: Elem) -> Elem {
        Elem(self.abs.neg(x.0))
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.abs.add(x.0, self.abs.neg(y.0)))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        match self.abs.tables() {
            Some(t) => {
                let n = self.abs.q as usize - 1;
                let mut k = t.log[x.0 as usize] as usize + t.log[y.0 as usize] as usize;
                if k >= n {
                    k -= n;
                }
                Elem(t.exp[k])
            }
            None => Elem(self.abs.mul_slow(x.0, y.0)),
        }
    }

    /// Multiplication by polynomial reduction, never consulting the tables.
    pub fn mul_without_tables(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.abs.mul_slow(x.0, y.0))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        match self.abs.tables() {
            Some(t) => {
                let n = self.abs.q - 1;
                let l = t.log[x.0 as usize];
                Ok(Elem(t.exp[((n - l) % n) as usize]))
            }
            None => Ok(Elem(self.abs.pow_slow(x.0, self.abs.q as u64 - 2))),
        }
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^k`; negative exponents need `x != 0`, and `0^0 = 1`.
    pub fn pow(&self, x: Elem, k: i64) -> Result<Elem> {
        if x.0 == 0 {
            return match k {
                0 => Ok(Elem::ONE),
                k if k > 0 => Ok(Elem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n = self.abs.q as i64 - 1;
        let k = k.rem_euclid(n) as u64;
        match self.abs.tables() {
            Some(t) => {
                let l = t.log[x.0 as usize] as u64;
                Ok(Elem(t.exp[((l * k) % n as u64) as usize]))
            }
            None => Ok(Elem(self.abs.pow_slow(x.0, k))),
        }
    }

    /// Power with a nonnegative exponent; total on all of the field.
    pub fn pow_u(&self, x: Elem, k: u64) -> Elem {
        if k == 0 {
            return Elem::ONE;
        }
        if x.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.abs.q as u64 - 1;
        self.pow(x, (k % n) as i64).expect("nonzero base")
    }

    /// Discrete logarithm to the field generator.
    pub fn log(&self, x: Elem) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        match self.abs.tables() {
            Some(t) => Some(t.log[x.0 as usize] as u64),
            None => {
                let g = self.abs.generator;
                let mut cur = 1u32;
                (0..self.abs.q as u64 - 1).find(|_| {
                    let hit = cur == x.0;
                    cur = self.abs.mul_slow(cur, g);
                    hit
                })
            }
        }
    }

    /// `generator^k`.
    pub fn exp(&self, k: u64) -> Elem {
        let n = self.abs.q as u64 - 1;
        match self.abs.tables() {
            Some(t) => Elem(t.exp[(k % n) as usize]),
            None => Elem(self.abs.pow_slow(self.abs.generator, k % n)),
        }
    }

    /// Absolute trace to the prime field, as an integer in `[0, p)`.
    pub fn abs_trace(&self, x: Elem) -> u32 {
        self.abs.abs_trace_slow(x.0)
    }

    /// `Tr(generator^k)`; the hot path of every additive character sum.
    pub fn trace_of_power(&self, k: u64) -> u32 {
        let n = self.abs.q as u64 - 1;
        match self.abs.tables() {
            Some(t) => t.trace[(k % n) as usize],
            None => self.abs_trace(self.exp(k)),
        }
    }

    /// The table `k -> Tr(generator^k)`, when tables are built.
    pub(crate) fn power_trace_table(&self) -> Option<&[u32]> {
        self.abs.tables().map(|t| t.trace.as_slice())
    }

    pub fn frobenius(&self, x: Elem) -> Elem {
        self.pow_u(x, self.abs.p as u64)
    }

    /// All elements in code order.
    pub fn elements(&self, nonzero_only: bool) -> impl Iterator<Item = Elem> + Clone {
        let start = u32::from(nonzero_only);
        (start..self.abs.q).map(Elem)
    }

    /// Map from codes of `sub` to codes of `self`, following the chain of
    /// declared bases. The prime field is a subfield of everything.
    pub fn embedding_from(&self, sub: &Field) -> Result<Vec<Elem>> {
        if sub.same_as(self) {
            return Ok(self.elements(false).collect());
        }
        if sub.degree() == 1 && sub.characteristic() == self.characteristic() {
            return Ok(sub.elements(false).collect());
        }
        let link = self.base.as_ref().ok_or(Error::NotASubfield)?;
        let inner = if link.base.same_as(sub) && link.base.degree() == sub.degree() {
            (0..sub.order() as u32).collect::<Vec<_>>()
        } else {
            link.base
                .embedding_from(sub)?
                .into_iter()
                .map(|x| x.0)
                .collect()
        };
        Ok(inner.into_iter().map(|c| Elem(link.embed[c as usize])).collect())
    }

    /// Precomputed view of a subfield inside `self`.
    pub fn subfield(&self, sub: &Field) -> Result<Subfield> {
        let embed = self.embedding_from(sub)?;
        let restrict = embed
            .iter()
            .enumerate()
            .map(|(i, x)| (x.0, Elem(i as u32)))
            .collect();
        Ok(Subfield {
            big: self.clone(),
            sub: sub.clone(),
            index: self.degree() / sub.degree(),
            embed,
            restrict,
        })
    }

    /// Image of a base-field element under the declared embedding.
    pub fn embed_base(&self, x: Elem) -> Result<Elem> {
        match &self.base {
            Some(link) => link
                .embed
                .get(x.0 as usize)
                .map(|&c| Elem(c))
                .ok_or_else(|| Error::InvalidInput(format!("{x} is not a base element"))),
            None => Ok(x),
        }
    }

    /// Relative trace into `target`.
    pub fn trace_to(&self, x: Elem, target: &Field) -> Result<Elem> {
        self.subfield(target)?.trace(x)
    }

    /// Relative norm into `target`.
    pub fn norm_to(&self, x: Elem, target: &Field) -> Result<Elem> {
        self.subfield(target)?.norm(x)
    }
}

/// A subfield `K` of `F` with both directions of the embedding.
pub struct Subfield {
    big: Field,
    sub: Field,
    index: u32,
    embed: Vec<Elem>,
    restrict: HashMap<u32, Elem>,
}

impl Subfield {
    pub fn sub(&self) -> &Field {
        &self.sub
    }

    /// `[F : K]`.
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn embed(&self, x: Elem) -> Elem {
        self.embed[x.0 as usize]
    }

    /// Preimage of an element of `F` that lies in `K`.
    pub fn restrict(&self, x: Elem) -> Option<Elem> {
        self.restrict.get(&x.0).copied()
    }

    /// `x + x^t + x^{t^2} + ... + x^{t^{d-1}}` with `t = |K|`, `d = [F:K]`.
    pub fn trace_in_big(&self, x: Elem) -> Elem {
        let t = self.sub.order();
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.index {
            acc = self.big.add(acc, y);
            y = self.big.pow_u(y, t);
        }
        acc
    }

    pub fn trace(&self, x: Elem) -> Result<Elem> {
        let y = self.trace_in_big(x);
        self.restrict(y).ok_or(Error::NotASubfield)
    }

    /// `x^{(|F|-1)/(|K|-1)}`.
    pub fn norm(&self, x: Elem) -> Result<Elem> {
        let e = (self.big.order() - 1) / (self.sub.order() - 1);
        let y = self.big.pow_u(x, e);
        self.restrict(y).ok_or(Error::NotASubfield)
    }
}

/// `u'` with `u u' = 1 (mod modulus)`, reduced to `[1, modulus)`; for
/// `modulus = 1` (the field `F_2`) the answer is 1.
pub fn mod_inverse_exponent(u: u64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::InvalidInput("modulus must be positive".into()));
    }
    if modulus == 1 {
        return Ok(1);
    }
    let g = (u as i128).extended_gcd(&(modulus as i128));
    if g.gcd != 1 {
        return Err(Error::NotCoprime {
            value: u,
            modulus,
        });
    }
    let inv = g.x.rem_euclid(modulus as i128) as u64;
    Ok(if inv == 0 { modulus } else { inv })
}

impl Ring for Field {
    type El = Elem;

    fn zero(&self) -> Elem {
        Elem::ZERO
    }
    fn one(&self) -> Elem {
        Elem::ONE
    }
    fn from_int(&self, n: i64) -> Elem {
        Field::from_int(self, n)
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Field::add(self, *a, *b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Field::neg(self, *a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Field::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        a.0 == 0
    }
    fn eq(&self, a: &Elem, b: &Elem) -> bool {
        a == b
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Field::sub(self, *a, *b)
    }
    fn div_int(&self, a: &Elem, m: i64) -> Result<Elem> {
        let m = self.from_int(m);
        if m.0 == 0 {
            return Err(Error::RingLacksDivision {
                divisor: self.abs.p as i64,
            });
        }
        self.div(*a, m)
    }
}
