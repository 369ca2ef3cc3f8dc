//! Prime-power finite fields in polynomial-basis representation.
//!
//! An element of `F_{p^e}` is encoded as an integer in `0..q`: its base-`p`
//! digits are the coefficients of the residue polynomial, lowest degree
//! first. Addition and multiplication go through precomputed tables, which
//! keeps every higher layer oblivious to the representation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Field scalar, an index in `0..q`.
pub type Scalar = u32;

/// Largest field order supported (tables are `q * q`).
pub const MAX_ORDER: u32 = 1024;

/// Known irreducible moduli for the fields with `q <= 64`, coefficients lowest
/// degree first.
const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (7, 2, &[1, 0, 1]),
];

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// A finite field `F_q`, `q = p^e`. Cheap to clone.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Tables>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p(), self.e(), self.inner.modulus)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Number of prime factors of `n`, counted with multiplicity.
pub fn big_omega(mut n: u64) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

fn poly_rem_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - c * bi % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Trial factorization: no monic polynomial of degree `1..=deg/2` divides `f`.
fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                g.push((k % p as u64) as u32);
                k /= p as u64;
            }
            g.push(1);
            if poly_rem_p(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn search_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for idx in 0..count {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut k = idx;
        for _ in 0..e {
            f.push((k % p as u64) as u32);
            k /= p as u64;
        }
        f.push(1);
        if is_irreducible_mod_p(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// `F_q` for a prime power `q`, with the built-in modulus.
    pub fn of_order(q: u32) -> Result<Self> {
        let p = (2..=q.max(2)).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
        let mut e = 0;
        let mut rest = q;
        while rest > 1 && rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if q < 2 || rest != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        Self::new(p, e)
    }

    /// `F_{p^e}` with the built-in modulus (or the smallest irreducible one
    /// found by search when the table has no entry).
    pub fn new(p: u32, e: u32) -> Result<Self> {
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            MODULUS_TABLE
                .iter()
                .find(|(tp, te, _)| *tp == p && *te == e)
                .map(|(_, _, m)| m.to_vec())
                .unwrap_or_else(|| {
                    if is_prime(p) && e >= 1 && (p as u64).pow(e) <= MAX_ORDER as u64 {
                        search_irreducible(p, e)
                    } else {
                        Vec::new()
                    }
                })
        };
        Self::with_modulus(p, e, &modulus)
    }

    /// `F_{p^e}` with a caller-supplied monic modulus of degree `e`.
    pub fn with_modulus(p: u32, e: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q64 = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER as u64 {
            return Err(Error::InvalidField(format!(
                "field order {p}^{e} exceeds {MAX_ORDER}"
            )));
        }
        if modulus.len() != e as usize + 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients in 0..{p}",
                e + 1
            )));
        }
        if modulus[e as usize] != 1 {
            return Err(Error::NotMonic);
        }
        if !is_irreducible_mod_p(modulus, p) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        let q = q64 as u32;
        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut k = x;
            for _ in 0..e {
                v.push(k % p);
                k /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = encode(&s) as u16;
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem_p(&prod, modulus, p);
                r.resize(e as usize, 0);
                mul[a as usize * qs + b as usize] = encode(&r) as u16;
            }
        }
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as u16;
                }
                if a != 0 && mul[a * qs + b] == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        Ok(FiniteField {
            inner: Arc::new(Tables {
                p,
                e,
                q,
                modulus: modulus.to_vec(),
                add,
                mul,
                neg,
                inv,
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn e(&self) -> u32 {
        self.inner.e
    }

    /// Field order `q = p^e`.
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        self.inner.add[(a * self.inner.q + b) as usize] as Scalar
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        self.inner.mul[(a * self.inner.q + b) as usize] as Scalar
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        self.inner.neg[a as usize] as Scalar
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        (a != 0).then(|| self.inner.inv[a as usize] as Scalar)
    }

    pub fn pow(&self, a: Scalar, mut exp: u64) -> Scalar {
        let mut result = 1;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        0..self.inner.q
    }

    pub fn contains(&self, a: Scalar) -> bool {
        a < self.inner.q
    }
}
