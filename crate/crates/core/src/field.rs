//! Finite fields `GF(q)`.
//!
//! Elements are stored as integers `0..q` whose base-`ℓ` digits are the
//! polynomial coefficients (lowest degree first); for prime `q` this is the
//! usual residue. Extension fields use the first primitive monic polynomial
//! of degree `e` in lexicographic coefficient order, so `x` generates the
//! multiplicative group and all tables are deterministic.

use crate::error::{Error, Result};

pub type Elem = u32;

/// Largest order accepted for proper prime powers.
pub const MAX_EXTENSION_ORDER: u32 = 128;
/// Largest order accepted for prime fields.
pub const MAX_PRIME_ORDER: u32 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `(ℓ, e)` with `q = ℓ^e`, when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let ell = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(ell) {
        rest /= ell;
        e += 1;
    }
    (rest == 1).then_some((ell, e))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    q: u32,
    ell: u32,
    e: u32,
    /// Monic modulus, coefficients lowest degree first, length `e + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = γ^i` for `i < q - 1`.
    exp: Vec<Elem>,
    /// `log[a]` for nonzero `a`; `log[0]` unused.
    log: Vec<u32>,
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        let (ell, e) = prime_power(q as u64).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        let ell = ell as u32;
        if e == 1 && q > MAX_PRIME_ORDER {
            return Err(Error::Field(format!("prime order {q} exceeds {MAX_PRIME_ORDER}")));
        }
        if e > 1 && q > MAX_EXTENSION_ORDER {
            return Err(Error::Field(format!("prime powers are supported up to {MAX_EXTENSION_ORDER}, got {q}")));
        }
        if e == 1 {
            let root = (1..q)
                .find(|&g| multiplicative_order_mod(g, q) == q - 1)
                .expect("prime fields have primitive roots");
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut cur: u64 = 1;
            for _ in 0..q - 1 {
                exp.push(cur as Elem);
                cur = cur * root as u64 % q as u64;
            }
            return Ok(Self::from_exp(q, ell, e, vec![q - root, 1], exp));
        }
        let (modulus, exp) = primitive_modulus(ell, e);
        Ok(Self::from_exp(q, ell, e, modulus, exp))
    }

    fn from_exp(q: u32, ell: u32, e: u32, modulus: Vec<u32>, exp: Vec<Elem>) -> Self {
        let mut log = vec![0u32; q as usize];
        for (i, &a) in exp.iter().enumerate() {
            log[a as usize] = i as u32;
        }
        FiniteField { q, ell, e, modulus, exp, log }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.ell
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Defining polynomial (monic, lowest degree first). For prime fields
    /// this is `x - γ`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element all logarithms are taken against.
    pub fn generator(&self) -> Elem {
        self.exp[1 % self.exp.len()]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    /// Coefficient vector of `a`, lowest degree first, length `e`.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        let mut rest = a;
        (0..self.e)
            .map(|_| {
                let c = rest % self.ell;
                rest /= self.ell;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Elem {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.ell + c % self.ell)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            return (a + b) % self.q;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.e {
            out += (a % self.ell + b % self.ell) % self.ell * place;
            a /= self.ell;
            b /= self.ell;
            place *= self.ell;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.e == 1 {
            return (self.q - a) % self.q;
        }
        let coeffs: Vec<u32> = self.coefficients(a).into_iter().map(|c| (self.ell - c) % self.ell).collect();
        self.from_coefficients(&coeffs)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| {
            let n = self.q - 1;
            self.exp[((n - self.log[a as usize]) % n) as usize]
        })
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[(self.log[a as usize] as u64 * (k % n) % n) as usize]
    }

    /// The unique multiplicative subgroup of order `m`, sorted.
    pub fn subgroup_of_order(&self, m: u32) -> Result<Vec<Elem>> {
        let n = self.q - 1;
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::Field(format!("{m} does not divide q - 1 = {n}")));
        }
        let step = n / m;
        let mut h: Vec<Elem> = (0..m).map(|i| self.exp[(i * step) as usize]).collect();
        h.sort_unstable();
        Ok(h)
    }

    /// Whether the nonzero element `a` is a square.
    pub fn is_square(&self, a: Elem) -> Result<bool> {
        if a == 0 {
            return Err(Error::Field("is_square is defined for nonzero elements".into()));
        }
        Ok(self.ell == 2 || self.log[a as usize].is_multiple_of(2))
    }
}

fn multiplicative_order_mod(g: u32, q: u32) -> u32 {
    let mut cur = g as u64 % q as u64;
    let mut k = 1;
    while cur != 1 {
        cur = cur * g as u64 % q as u64;
        k += 1;
        if k > q {
            return 0;
        }
    }
    k
}

/// Multiplies a polynomial of degree `< e` by `x` modulo the monic `modulus`.
fn times_x(poly: &[u32], modulus: &[u32], ell: u32) -> Vec<u32> {
    let e = poly.len();
    let top = poly[e - 1];
    let mut out = vec![0u32; e];
    for i in (1..e).rev() {
        out[i] = poly[i - 1];
    }
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = (*slot + ell * ell - top * modulus[i] % ell) % ell;
    }
    out
}

fn encode(poly: &[u32], ell: u32) -> Elem {
    poly.iter().rev().fold(0, |acc, &c| acc * ell + c)
}

/// First monic degree-`e` polynomial (lexicographic in its low coefficients)
/// for which `x` has multiplicative order `ℓ^e - 1`, with the power table
/// of `x`. Primitive polynomials are irreducible.
fn primitive_modulus(ell: u32, e: u32) -> (Vec<u32>, Vec<Elem>) {
    let q = ell.pow(e);
    let e = e as usize;
    for code in 0..q {
        let mut modulus: Vec<u32> = (0..e).map(|i| code / ell.pow(i as u32) % ell).collect();
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        let mut cur = vec![0u32; e];
        cur[0] = 1;
        let mut exp = Vec::with_capacity(q as usize - 1);
        loop {
            exp.push(encode(&cur, ell));
            cur = times_x(&cur, &modulus, ell);
            if encode(&cur, ell) == 1 {
                break;
            }
            if exp.len() as u32 >= q - 1 {
                break;
            }
        }
        if exp.len() as u32 == q - 1 && encode(&cur, ell) == 1 {
            return (modulus, exp);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}
