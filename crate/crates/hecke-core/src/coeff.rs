//! Sparse exact coefficient arithmetic and exact linear algebra.
//!
//! `ABPoly` is Z[a,b]; `ZetaCoeff` is Z[a,b][z1^±1, ..., zk^±1], the central
//! coefficient ring with Laurent directions coming from the coweight lattice
//! kernel.  Matrices over these rings get fraction-free (Bareiss) determinants;
//! rational matrices get exact Gauss elimination, kernels, and span checks;
//! integer matrices get Smith normal form with unimodular transforms.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

// ---------------------------------------------------------------------------
// ABPoly: Z[a,b]
// ---------------------------------------------------------------------------

/// Sparse polynomial in Z[a,b].  Keys are (deg_a, deg_b); zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default, PartialOrd, Ord, Hash)]
pub struct ABPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl ABPoly {
    pub fn zero() -> Self {
        ABPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        ABPoly::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut p = ABPoly::zero();
        p.add_term(0, 0, BigInt::from(n));
        p
    }

    pub fn var_a() -> Self {
        let mut p = ABPoly::zero();
        p.add_term(1, 0, BigInt::one());
        p
    }

    pub fn var_b() -> Self {
        let mut p = ABPoly::zero();
        p.add_term(0, 1, BigInt::one());
        p
    }

    /// a + b
    pub fn a_plus_b() -> Self {
        let mut p = ABPoly::var_a();
        p.add_term(0, 1, BigInt::one());
        p
    }

    /// a * b
    pub fn ab() -> Self {
        let mut p = ABPoly::zero();
        p.add_term(1, 1, BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&(0, 0)).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn add_term(&mut self, da: u32, db: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((da, db)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(da, db));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(i, j), c) in &o.terms {
            r.add_term(i, j, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(i, j), c) in &o.terms {
            r.add_term(i, j, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        let mut r = ABPoly::zero();
        for (&(i, j), c) in &self.terms {
            r.add_term(i, j, -c.clone());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = ABPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                r.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, n: i64) -> Self {
        self.mul(&ABPoly::from_int(n))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ABPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Total degree (max over monomials of deg_a + deg_b); zero gives None.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Exact division in Z[a,b]; None when `o` does not divide `self`.
    pub fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let (&(gi, gj), gc) = o.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = ABPoly::zero();
        while !rem.is_zero() {
            let (&(ri, rj), rc) = rem.terms.iter().next_back().unwrap();
            if ri < gi || rj < gj {
                return None;
            }
            let (q, r) = num::Integer::div_rem(rc, gc);
            if !r.is_zero() {
                return None;
            }
            let (qi, qj) = (ri - gi, rj - gj);
            let mut t = ABPoly::zero();
            t.add_term(qi, qj, q.clone());
            rem = rem.sub(&t.mul(o));
            quot.add_term(qi, qj, q);
        }
        Some(quot)
    }

    /// Evaluate at rational (a, b).
    pub fn eval(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = BigRational::from(c.clone());
            for _ in 0..i {
                t *= a;
            }
            for _ in 0..j {
                t *= b;
            }
            acc += t;
        }
        acc
    }

    /// Substitute a -> pa, b -> pb (polynomial substitution).
    pub fn subst(&self, pa: &ABPoly, pb: &ABPoly) -> ABPoly {
        let mut acc = ABPoly::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = ABPoly::zero();
            t.add_term(0, 0, c.clone());
            t = t.mul(&pa.pow(i)).mul(&pb.pow(j));
            acc = acc.add(&t);
        }
        acc
    }

    pub fn to_zeta(&self, zlen: usize) -> ZetaCoeff {
        let mut z = ZetaCoeff::zero_with(zlen);
        for (&(i, j), c) in &self.terms {
            z.add_term(i, j, vec![0; zlen], c.clone());
        }
        z
    }

    /// Canonical text form with custom variable names (used by the Rees
    /// presentation, which reads the two variables as q and x).
    pub fn display_named(&self, na: &str, nb: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            push_factor(&mut factors, na, i as i64);
            push_factor(&mut factors, nb, j as i64);
            push_term(&mut out, idx == 0, c, factors);
        }
        out
    }
}

fn push_factor(factors: &mut Vec<String>, name: &str, e: i64) {
    if e == 0 {
        return;
    }
    if e == 1 {
        factors.push(name.to_string());
    } else {
        factors.push(format!("{}^{}", name, e));
    }
}

fn push_term(out: &mut String, first: bool, c: &BigInt, factors: Vec<String>) {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else if neg {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    if factors.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(&factors.join("*"));
    } else {
        out.push_str(&format!("{}*{}", abs, factors.join("*")));
    }
}

impl fmt::Display for ABPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_named("a", "b"))
    }
}

impl std::ops::Add for &ABPoly {
    type Output = ABPoly;
    fn add(self, o: &ABPoly) -> ABPoly {
        ABPoly::add(self, o)
    }
}

impl std::ops::Sub for &ABPoly {
    type Output = ABPoly;
    fn sub(self, o: &ABPoly) -> ABPoly {
        ABPoly::sub(self, o)
    }
}

impl std::ops::Mul for &ABPoly {
    type Output = ABPoly;
    fn mul(self, o: &ABPoly) -> ABPoly {
        ABPoly::mul(self, o)
    }
}

impl std::ops::Neg for &ABPoly {
    type Output = ABPoly;
    fn neg(self) -> ABPoly {
        ABPoly::neg(self)
    }
}

// ---------------------------------------------------------------------------
// ZetaCoeff: Z[a,b][z^±1]
// ---------------------------------------------------------------------------

/// Monomial a^da * b^db * z1^z[0] * ... * zk^z[k-1].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct ZMono {
    pub da: u32,
    pub db: u32,
    pub z: Vec<i64>,
}

/// Sparse element of Z[a,b][z1^±1,...,zk^±1].  All stored monomials carry
/// z-vectors of the same length `zlen`; operations unify lengths by padding.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ZetaCoeff {
    zlen: usize,
    terms: BTreeMap<ZMono, BigInt>,
}

impl ZetaCoeff {
    pub fn zero_with(zlen: usize) -> Self {
        ZetaCoeff { zlen, terms: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        Self::zero_with(0)
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, vec![], BigInt::one());
        p
    }

    pub fn from_int(n: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, vec![], BigInt::from(n));
        p
    }

    /// Single Laurent monomial z^xi.
    pub fn monomial(xi: &[i64]) -> Self {
        let mut p = Self::zero_with(xi.len());
        p.add_term(0, 0, xi.to_vec(), BigInt::one());
        p
    }

    pub fn zlen(&self) -> usize {
        self.zlen
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.da == 0 && m.db == 0 && m.z.iter().all(|&e| e == 0) && c.is_one())
                .unwrap_or(false)
    }

    fn unify(&mut self, zlen: usize) {
        if zlen <= self.zlen {
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (mut m, c) in old {
            m.z.resize(zlen, 0);
            self.terms.insert(m, c);
        }
        self.zlen = zlen;
    }

    pub fn add_term(&mut self, da: u32, db: u32, mut z: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        if z.len() > self.zlen {
            self.unify(z.len());
        }
        z.resize(self.zlen, 0);
        let m = ZMono { da, db, z };
        let e = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ZMono, &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.unify(o.zlen);
        for (m, c) in &o.terms {
            r.add_term(m.da, m.db, m.z.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.unify(o.zlen);
        for (m, c) in &o.terms {
            r.add_term(m.da, m.db, m.z.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        let mut r = ZetaCoeff::zero_with(self.zlen);
        for (m, c) in &self.terms {
            r.add_term(m.da, m.db, m.z.clone(), -c.clone());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let zlen = self.zlen.max(o.zlen);
        let mut r = ZetaCoeff::zero_with(zlen);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut z = vec![0i64; zlen];
                for (i, zi) in z.iter_mut().enumerate() {
                    *zi = m1.z.get(i).copied().unwrap_or(0) + m2.z.get(i).copied().unwrap_or(0);
                }
                r.add_term(m1.da + m2.da, m1.db + m2.db, z, c1 * c2);
            }
        }
        r
    }

    /// Unit test for Z[a,b][z^±1] over Z: units are ±(single Laurent
    /// monomial).  Returns the inverse as a witness.
    pub fn is_unit(&self) -> Option<ZetaCoeff> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if m.da != 0 || m.db != 0 {
            return None;
        }
        if !(c.is_one() || (-c).is_one()) {
            return None;
        }
        let mut inv = ZetaCoeff::zero_with(self.zlen);
        inv.add_term(0, 0, m.z.iter().map(|&e| -e).collect(), c.clone());
        Some(inv)
    }

    /// Exact division; None when `o` does not divide `self`.
    pub fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ZetaCoeff::zero_with(self.zlen));
        }
        let zlen = self.zlen.max(o.zlen);
        let mut f = self.clone();
        let mut g = o.clone();
        f.unify(zlen);
        g.unify(zlen);
        // Shift both to nonnegative z-exponents so lex division terminates.
        let mut shift_f = vec![0i64; zlen];
        let mut shift_g = vec![0i64; zlen];
        for (m, _) in &f.terms {
            for i in 0..zlen {
                shift_f[i] = shift_f[i].min(m.z[i]);
            }
        }
        for (m, _) in &g.terms {
            for i in 0..zlen {
                shift_g[i] = shift_g[i].min(m.z[i]);
            }
        }
        let fsh = f.shift_z(&shift_f.iter().map(|&e| -e).collect::<Vec<_>>());
        let gsh = g.shift_z(&shift_g.iter().map(|&e| -e).collect::<Vec<_>>());
        let q = fsh.poly_div(&gsh)?;
        // f = z^sf fsh, g = z^sg gsh  =>  f/g = z^(sf-sg) (fsh/gsh)
        let back: Vec<i64> = shift_f.iter().zip(&shift_g).map(|(a, b)| a - b).collect();
        Some(q.shift_z(&back))
    }

    fn shift_z(&self, by: &[i64]) -> Self {
        let mut r = ZetaCoeff::zero_with(self.zlen);
        for (m, c) in &self.terms {
            let z: Vec<i64> = m.z.iter().enumerate().map(|(i, &e)| e + by.get(i).copied().unwrap_or(0)).collect();
            r.add_term(m.da, m.db, z, c.clone());
        }
        r
    }

    /// Division assuming all z-exponents nonnegative (lex leading-term loop).
    fn poly_div(&self, g: &Self) -> Option<Self> {
        let (gm, gc) = g.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = ZetaCoeff::zero_with(self.zlen);
        while !rem.is_zero() {
            let (rm, rc) = rem.terms.iter().next_back().unwrap();
            if rm.da < gm.da || rm.db < gm.db || rm.z.iter().zip(&gm.z).any(|(a, b)| a < b) {
                return None;
            }
            let (q, r) = num::Integer::div_rem(rc, gc);
            if !r.is_zero() {
                return None;
            }
            let qm = ZMono {
                da: rm.da - gm.da,
                db: rm.db - gm.db,
                z: rm.z.iter().zip(&gm.z).map(|(a, b)| a - b).collect(),
            };
            let mut t = ZetaCoeff::zero_with(self.zlen);
            t.add_term(qm.da, qm.db, qm.z.clone(), q.clone());
            rem = rem.sub(&t.mul(g));
            quot.add_term(qm.da, qm.db, qm.z, q);
        }
        Some(quot)
    }

    /// Evaluate at rational a, b and nonzero rational z values.
    pub fn eval(&self, a: &BigRational, b: &BigRational, zs: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from(c.clone());
            for _ in 0..m.da {
                t *= a;
            }
            for _ in 0..m.db {
                t *= b;
            }
            for (i, &e) in m.z.iter().enumerate() {
                let zv = &zs[i];
                if e >= 0 {
                    for _ in 0..e {
                        t *= zv;
                    }
                } else {
                    for _ in 0..(-e) {
                        t /= zv;
                    }
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for ZetaCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            push_factor(&mut factors, "a", m.da as i64);
            push_factor(&mut factors, "b", m.db as i64);
            for (i, &e) in m.z.iter().enumerate() {
                push_factor(&mut factors, &format!("z{}", i + 1), e);
            }
            push_term(&mut out, idx == 0, c, factors);
        }
        write!(f, "{}", out)
    }
}

// ---------------------------------------------------------------------------
// Ring trait and generic matrices
// ---------------------------------------------------------------------------

/// Minimal integral-domain interface for fraction-free elimination.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_add(&self, o: &Self) -> Self;
    fn r_sub(&self, o: &Self) -> Self;
    fn r_mul(&self, o: &Self) -> Self;
    fn r_neg(&self) -> Self;
    fn r_is_zero(&self) -> bool;
    /// Exact division; None when not divisible.
    fn r_div(&self, o: &Self) -> Option<Self>;
}

impl Ring for ABPoly {
    fn r_zero() -> Self {
        ABPoly::zero()
    }
    fn r_one() -> Self {
        ABPoly::one()
    }
    fn r_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn r_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn r_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn r_neg(&self) -> Self {
        self.neg()
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn r_div(&self, o: &Self) -> Option<Self> {
        self.exact_div(o)
    }
}

impl Ring for ZetaCoeff {
    fn r_zero() -> Self {
        ZetaCoeff::zero()
    }
    fn r_one() -> Self {
        ZetaCoeff::one()
    }
    fn r_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn r_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn r_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn r_neg(&self) -> Self {
        self.neg()
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn r_div(&self, o: &Self) -> Option<Self> {
        self.exact_div(o)
    }
}

impl Ring for BigRational {
    fn r_zero() -> Self {
        BigRational::zero()
    }
    fn r_one() -> Self {
        BigRational::one()
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn r_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(self / o)
        }
    }
}

impl Ring for BigInt {
    fn r_zero() -> Self {
        BigInt::zero()
    }
    fn r_one() -> Self {
        BigInt::one()
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn r_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let (q, r) = num::Integer::div_rem(self, o);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

/// Dense matrix over an exact ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<T: Ring> {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<T>,
}

impl<T: Ring> ExactMatrix<T> {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        ExactMatrix { nrows, ncols, data: vec![T::r_zero(); nrows * ncols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        ExactMatrix { nrows, ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.ncols + j] = v;
    }

    /// Fraction-free Bareiss determinant.  Panics on non-square input.
    pub fn det_bareiss(&self) -> T {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return T::r_one();
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = T::r_one();
        for k in 0..n - 1 {
            if m.get(k, k).r_is_zero() {
                let swap = (k + 1..n).find(|&i| !m.get(i, k).r_is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            let a = m.get(k, j).clone();
                            let b = m.get(i, j).clone();
                            m.set(k, j, b);
                            m.set(i, j, a);
                        }
                        sign_flip = !sign_flip;
                    }
                    None => return T::r_zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j).r_mul(m.get(k, k)).r_sub(&m.get(i, k).r_mul(m.get(k, j)));
                    let q = num.r_div(&prev).expect("Bareiss division must be exact");
                    m.set(i, j, q);
                }
                m.set(i, k, T::r_zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        if sign_flip {
            d.r_neg()
        } else {
            d
        }
    }

    /// Cofactor-expansion determinant (test oracle for small sizes).
    pub fn det_cofactor(&self) -> T {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        if n == 0 {
            return T::r_one();
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = T::r_zero();
        for j in 0..n {
            if self.get(0, j).r_is_zero() {
                continue;
            }
            let mut minor = ExactMatrix::new(n - 1, n - 1);
            for i in 1..n {
                let mut jj = 0;
                for k in 0..n {
                    if k == j {
                        continue;
                    }
                    minor.set(i - 1, jj, self.get(i, k).clone());
                    jj += 1;
                }
            }
            let t = self.get(0, j).r_mul(&minor.det_cofactor());
            if j % 2 == 0 {
                acc = acc.r_add(&t);
            } else {
                acc = acc.r_sub(&t);
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Rational elimination: rank, kernel, span membership
// ---------------------------------------------------------------------------

pub type QVec = Vec<BigRational>;

pub fn qvec_is_zero(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Incremental row-echelon span over Q.  Rows are reduced on insert; the
/// span supports exact membership tests without re-elimination.
#[derive(Clone, Debug, Default)]
pub struct RowSpan {
    rows: Vec<QVec>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new() -> Self {
        RowSpan::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut QVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, mut v: QVec) -> bool {
        self.reduce(&mut v);
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = v[p].clone();
                for x in v.iter_mut() {
                    *x /= &inv;
                }
                // Back-substitute to keep earlier rows reduced against the new pivot.
                for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
                    let _ = rp;
                    if !row[p].is_zero() {
                        let f = row[p].clone();
                        for (x, y) in row.iter_mut().zip(&v) {
                            *x -= &f * y;
                        }
                    }
                }
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
        }
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        qvec_is_zero(&w)
    }
}

/// Reduced row echelon form in place; returns pivot column indices.
pub fn rref(rows: &mut Vec<QVec>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let piv = (r..nrows).find(|&i| !rows[i][c].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        rows.swap(r, piv);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel {v : A v = 0} of the matrix given by rows.
pub fn kernel_basis(rows: &[QVec]) -> Vec<QVec> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut m: Vec<QVec> = rows.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form
// ---------------------------------------------------------------------------

/// Dense i64 matrix for lattice work (desk-scale entries).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<i64>,
}

impl IntMat {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        IntMat { nrows, ncols, data: vec![0; nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::new(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        IntMat { nrows, ncols, data: rows.concat() }
    }

    /// Columns are the given vectors.
    pub fn from_cols(cols: &[Vec<i64>]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map(|c| c.len()).unwrap_or(0);
        let mut m = IntMat::new(nrows, ncols);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "ragged columns");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn mul(&self, o: &IntMat) -> IntMat {
        assert_eq!(self.ncols, o.nrows, "dimension mismatch");
        let mut r = IntMat::new(self.nrows, o.ncols);
        for i in 0..self.nrows {
            for j in 0..o.ncols {
                let mut acc: i64 = 0;
                for k in 0..self.ncols {
                    acc = acc
                        .checked_add(self.get(i, k).checked_mul(o.get(k, j)).expect("overflow"))
                        .expect("overflow");
                }
                r.set(i, j, acc);
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.ncols, v.len(), "dimension mismatch");
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut r = IntMat::new(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                r.set(j, i, self.get(i, j));
            }
        }
        r
    }

    /// Exact inverse of an integer matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> IntMat {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let rows: Vec<QVec> = (0..n)
            .map(|i| {
                let mut row: QVec = (0..n).map(|j| BigRational::from(BigInt::from(self.get(i, j)))).collect();
                let mut aug: QVec = vec![BigRational::zero(); n];
                aug[i] = BigRational::one();
                row.extend(aug);
                row
            })
            .collect();
        let mut m = rows;
        let piv = rref(&mut m);
        assert_eq!(piv, (0..n).collect::<Vec<_>>(), "matrix not invertible");
        let mut inv = IntMat::new(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &m[i][n + j];
                assert!(v.is_integer(), "inverse not integral (matrix not unimodular)");
                inv.set(i, j, int_to_i64(&v.to_integer()));
            }
        }
        inv
    }
}

pub fn int_to_i64(v: &BigInt) -> i64 {
    use num::ToPrimitive;
    v.to_i64().expect("integer out of i64 range")
}

/// Smith normal form: returns (u, s, v) with u * a * v = s, u and v
/// unimodular, s diagonal with each entry dividing the next.
pub struct Smith {
    pub u: IntMat,
    pub s: IntMat,
    pub v: IntMat,
}

pub fn smith_normal_form(a: &IntMat) -> Smith {
    let mut s = a.clone();
    let mut u = IntMat::identity(a.nrows);
    let mut v = IntMat::identity(a.ncols);
    let n = a.nrows.min(a.ncols);
    for t in 0..n {
        loop {
            // Find a nonzero pivot in the remaining block.
            let mut piv: Option<(usize, usize)> = None;
            let mut best: i64 = 0;
            for i in t..s.nrows {
                for j in t..s.ncols {
                    let x = s.get(i, j).abs();
                    if x != 0 && (piv.is_none() || x < best) {
                        piv = Some((i, j));
                        best = x;
                    }
                }
            }
            let (pi, pj) = match piv {
                Some(p) => p,
                None => return finish_snf(u, s, v, t),
            };
            swap_rows(&mut s, &mut u, t, pi);
            swap_cols(&mut s, &mut v, t, pj);
            // Eliminate column t and row t.
            let mut clean = true;
            for i in t + 1..s.nrows {
                let q = div_round(s.get(i, t), s.get(t, t));
                if q != 0 {
                    row_op(&mut s, &mut u, i, t, -q);
                }
                if s.get(i, t) != 0 {
                    clean = false;
                }
            }
            for j in t + 1..s.ncols {
                let q = div_round(s.get(t, j), s.get(t, t));
                if q != 0 {
                    col_op(&mut s, &mut v, j, t, -q);
                }
                if s.get(t, j) != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility fix-up: pivot must divide every remaining entry.
            let p = s.get(t, t);
            let mut bad: Option<(usize, usize)> = None;
            'scan: for i in t + 1..s.nrows {
                for j in t + 1..s.ncols {
                    if s.get(i, j) % p != 0 {
                        bad = Some((i, j));
                        break 'scan;
                    }
                }
            }
            match bad {
                None => break,
                Some((i, _)) => {
                    // Add row i to row t and restart the elimination at t.
                    row_op(&mut s, &mut u, t, i, 1);
                }
            }
        }
    }
    finish_snf(u, s, v, n)
}

fn finish_snf(mut u: IntMat, mut s: IntMat, v: IntMat, upto: usize) -> Smith {
    for t in 0..upto.min(s.nrows).min(s.ncols) {
        if s.get(t, t) < 0 {
            for j in 0..s.ncols {
                s.set(t, j, -s.get(t, j));
            }
            for j in 0..u.ncols {
                u.set(t, j, -u.get(t, j));
            }
        }
    }
    Smith { u, s, v }
}

fn swap_rows(s: &mut IntMat, u: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..s.ncols {
        let x = s.get(a, j);
        s.set(a, j, s.get(b, j));
        s.set(b, j, x);
    }
    for j in 0..u.ncols {
        let x = u.get(a, j);
        u.set(a, j, u.get(b, j));
        u.set(b, j, x);
    }
}

fn swap_cols(s: &mut IntMat, v: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..s.nrows {
        let x = s.get(i, a);
        s.set(i, a, s.get(i, b));
        s.set(i, b, x);
    }
    for i in 0..v.nrows {
        let x = v.get(i, a);
        v.set(i, a, v.get(i, b));
        v.set(i, b, x);
    }
}

/// row a += f * row b (in s and in the row transform u).
fn row_op(s: &mut IntMat, u: &mut IntMat, a: usize, b: usize, f: i64) {
    for j in 0..s.ncols {
        s.set(a, j, s.get(a, j) + f * s.get(b, j));
    }
    for j in 0..u.ncols {
        u.set(a, j, u.get(a, j) + f * u.get(b, j));
    }
}

/// col a += f * col b (in s and in the column transform v).
fn col_op(s: &mut IntMat, v: &mut IntMat, a: usize, b: usize, f: i64) {
    for i in 0..s.nrows {
        s.set(i, a, s.get(i, a) + f * s.get(i, b));
    }
    for i in 0..v.nrows {
        v.set(i, a, v.get(i, a) + f * v.get(i, b));
    }
}

fn div_round(a: i64, b: i64) -> i64 {
    // Rounded division keeps remainders small during SNF.
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (r < 0) == (b < 0) { 1 } else { -1 }
    } else {
        q
    }
}

/// Nonzero diagonal entries of the SNF, each dividing the next.
pub fn invariant_factors(a: &IntMat) -> Vec<i64> {
    let snf = smith_normal_form(a);
    let n = a.nrows.min(a.ncols);
    (0..n).map(|i| snf.s.get(i, i)).filter(|&d| d != 0).collect()
}

/// Basis of {v : A v = 0} over Z.
pub fn int_kernel_basis(a: &IntMat) -> Vec<Vec<i64>> {
    let snf = smith_normal_form(a);
    let n = a.nrows.min(a.ncols);
    let rank = (0..n).filter(|&i| snf.s.get(i, i) != 0).count();
    (rank..a.ncols)
        .map(|j| (0..a.ncols).map(|i| snf.v.get(i, j)).collect())
        .collect()
}

/// Reduction of Z^n modulo a saturated sublattice given by basis columns.
/// Provides coordinates in the sublattice basis together with a canonical
/// representative in a fixed complement.
#[derive(Clone, Debug)]
pub struct SaturatedComplement {
    pub rank: usize,
    dim: usize,
    u: IntMat,
    uinv: IntMat,
    v: IntMat,
}

impl SaturatedComplement {
    /// `basis` holds the sublattice basis vectors (each of length n).
    pub fn new(dim: usize, basis: &[Vec<i64>]) -> Self {
        let k = basis.len();
        if k == 0 {
            return SaturatedComplement {
                rank: 0,
                dim,
                u: IntMat::identity(dim),
                uinv: IntMat::identity(dim),
                v: IntMat::identity(0),
            };
        }
        let b = IntMat::from_cols(basis);
        let snf = smith_normal_form(&b);
        for i in 0..k {
            assert_eq!(snf.s.get(i, i), 1, "sublattice not saturated");
        }
        let uinv = snf.u.inverse_unimodular();
        SaturatedComplement { rank: k, dim, u: snf.u, uinv, v: snf.v }
    }

    /// x = B*xi + rep with rep in the fixed complement; returns (xi, rep).
    pub fn reduce(&self, x: &[i64]) -> (Vec<i64>, Vec<i64>) {
        if self.rank == 0 {
            return (vec![], x.to_vec());
        }
        let y = self.u.mul_vec(x);
        let head: Vec<i64> = y[..self.rank].to_vec();
        let xi = self.v.mul_vec(&head);
        let mut tail = vec![0i64; self.dim];
        tail[self.rank..].copy_from_slice(&y[self.rank..]);
        let rep = self.uinv.mul_vec(&tail);
        (xi, rep)
    }
}

/// Finite quotient Z^n / col-span(G) with canonical representatives.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    pub diag: Vec<i64>,
    u: IntMat,
    uinv: IntMat,
}

impl LatticeQuotient {
    pub fn new(g: &IntMat) -> Self {
        let snf = smith_normal_form(g);
        let n = g.nrows;
        let mut diag = Vec::with_capacity(n);
        for i in 0..n {
            let d = if i < g.ncols.min(n) { snf.s.get(i, i) } else { 0 };
            assert!(d != 0, "quotient is infinite (columns do not span full rank)");
            diag.push(d);
        }
        let uinv = snf.u.inverse_unimodular();
        LatticeQuotient { diag, u: snf.u, uinv }
    }

    pub fn canonical_rep(&self, x: &[i64]) -> Vec<i64> {
        let y = self.u.mul_vec(x);
        let r: Vec<i64> = y.iter().zip(&self.diag).map(|(&a, &d)| a.rem_euclid(d)).collect();
        self.uinv.mul_vec(&r)
    }

    pub fn enumerate_reps(&self) -> Vec<Vec<i64>> {
        let mut acc: Vec<Vec<i64>> = vec![vec![]];
        for &d in &self.diag {
            let mut next = Vec::new();
            for pref in &acc {
                for r in 0..d {
                    let mut p = pref.clone();
                    p.push(r);
                    next.push(p);
                }
            }
            acc = next;
        }
        acc.into_iter().map(|r| self.uinv.mul_vec(&r)).collect()
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from(big(n))
    }

    #[test]
    fn square_of_a_plus_b() {
        // Frozen oracle: naive term-by-term expansion of (a+b)^2.
        let sq = ABPoly::a_plus_b().mul(&ABPoly::a_plus_b());
        let mut expect = ABPoly::zero();
        expect.add_term(2, 0, big(1));
        expect.add_term(1, 1, big(2));
        expect.add_term(0, 2, big(1));
        assert_eq!(sq, expect);
    }

    #[test]
    fn display_canonical() {
        let mut p = ABPoly::zero();
        p.add_term(2, 1, big(3));
        assert_eq!(p.to_string(), "3*a^2*b");
        let mut z = p.to_zeta(1);
        z.add_term(0, 0, vec![-1], big(1));
        assert_eq!(z.to_string(), "3*a^2*b + z1^-1");
        let mut q = ABPoly::from_int(2);
        q.add_term(1, 0, big(-1));
        assert_eq!(q.to_string(), "-a + 2");
        assert_eq!(ABPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let f = ABPoly::a_plus_b().mul(&ABPoly::var_a().sub(&ABPoly::var_b()));
        let q = f.exact_div(&ABPoly::a_plus_b()).unwrap();
        assert_eq!(q, ABPoly::var_a().sub(&ABPoly::var_b()));
        let g = ABPoly::var_a().add(&ABPoly::one());
        assert!(ABPoly::var_a().pow(2).add(&ABPoly::var_b()).exact_div(&g).is_none());
    }

    #[test]
    fn zeta_laurent_division() {
        // (z1^-1 + 1) * z1^2  divided by  (z1^-1 + 1)
        let f = ZetaCoeff::monomial(&[-1]).add(&ZetaCoeff::one());
        let m = ZetaCoeff::monomial(&[2]);
        let prod = f.mul(&m);
        assert_eq!(prod.exact_div(&f).unwrap(), m);
    }

    #[test]
    fn unit_detection() {
        assert!(ZetaCoeff::from_int(2).is_unit().is_none());
        assert!(ABPoly::ab().to_zeta(0).is_unit().is_none());
        let u = ZetaCoeff::monomial(&[2, -1]).neg();
        let inv = u.is_unit().unwrap();
        assert!(u.mul(&inv).is_one());
        assert!(ZetaCoeff::one().add(&ZetaCoeff::monomial(&[1])).is_unit().is_none());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        // Frozen oracle: the A1 vertex Gram shape has determinant 1.
        let one = ABPoly::one();
        let m = ExactMatrix::from_rows(vec![
            vec![one.clone(), ABPoly::zero()],
            vec![ABPoly::a_plus_b(), one.clone()],
        ]);
        assert_eq!(m.det_bareiss(), ABPoly::one());
        assert_eq!(m.det_cofactor(), ABPoly::one());

        let m2 = ExactMatrix::from_rows(vec![
            vec![ABPoly::var_a(), ABPoly::var_b(), ABPoly::one()],
            vec![ABPoly::one(), ABPoly::a_plus_b(), ABPoly::zero()],
            vec![ABPoly::ab(), ABPoly::zero(), ABPoly::var_a()],
        ]);
        assert_eq!(m2.det_bareiss(), m2.det_cofactor());
    }

    #[test]
    fn bareiss_zeta_with_laurent_entries() {
        let m = ExactMatrix::from_rows(vec![
            vec![ZetaCoeff::monomial(&[1]), ZetaCoeff::one()],
            vec![ZetaCoeff::one(), ZetaCoeff::monomial(&[-1])],
        ]);
        assert_eq!(m.det_bareiss(), ZetaCoeff::zero_with(1));
        assert_eq!(m.det_cofactor(), ZetaCoeff::zero_with(1));
    }

    #[test]
    fn snf_oracles() {
        // SL2: root 2 inside X = Z.
        assert_eq!(invariant_factors(&IntMat::from_cols(&[vec![2]])), vec![2]);
        // A2_sl Cartan matrix: X/Q = Z/3.
        let cartan = IntMat::from_rows(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(invariant_factors(&cartan), vec![1, 3]);
        // GL2 root column: free quotient.
        assert_eq!(invariant_factors(&IntMat::from_cols(&[vec![1, -1]])), vec![1]);
        // SNF transform identity u*a*v = s.
        let a = IntMat::from_rows(&[vec![4, 6, 2], vec![2, 8, 10]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
    }

    #[test]
    fn integer_kernel() {
        // Pairing row of GL2: kernel spanned by (1,1).
        let a = IntMat::from_rows(&[vec![1, -1]]);
        let k = int_kernel_basis(&a);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0], v[1]);
        assert_ne!(v[0], 0);
    }

    #[test]
    fn saturated_complement_roundtrip() {
        let sc = SaturatedComplement::new(2, &[vec![1, 1]]);
        let (xi, rep) = sc.reduce(&[3, 5]);
        assert_eq!(xi.len(), 1);
        // x = xi * (1,1) + rep
        assert_eq!(rep[0] + xi[0], 3);
        assert_eq!(rep[1] + xi[0], 5);
        // Representatives are canonical per coset.
        let (_, rep2) = sc.reduce(&[4, 6]);
        assert_eq!(rep, rep2);
        let (_, rep3) = sc.reduce(&[3, 6]);
        assert_ne!(rep, rep3);
    }

    #[test]
    fn lattice_quotient_reps() {
        // Z^2 / span{(2,0),(0,3)} has 6 cosets.
        let q = LatticeQuotient::new(&IntMat::from_cols(&[vec![2, 0], vec![0, 3]]));
        let reps = q.enumerate_reps();
        assert_eq!(reps.len(), 6);
        let canon: std::collections::BTreeSet<Vec<i64>> =
            reps.iter().map(|r| q.canonical_rep(r)).collect();
        assert_eq!(canon.len(), 6);
        assert_eq!(q.canonical_rep(&[5, 4]), q.canonical_rep(&[1, 1]));
    }

    #[test]
    fn rowspan_and_kernel() {
        let mut span = RowSpan::new();
        assert!(span.insert(vec![rat(1), rat(2), rat(0)]));
        assert!(span.insert(vec![rat(0), rat(1), rat(1)]));
        assert!(!span.insert(vec![rat(1), rat(3), rat(1)]));
        assert_eq!(span.rank(), 2);
        assert!(span.contains(&[rat(2), rat(5), rat(1)]));
        assert!(!span.contains(&[rat(0), rat(0), rat(1)]));

        let rows = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
        ];
        let k = kernel_basis(&rows);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigRational = (0..3).map(|i| &rows[0][i] * &v[i]).sum();
            assert!(dot.is_zero());
        }
    }

    proptest! {
        #[test]
        fn abpoly_ring_axioms(
            ta in proptest::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..5),
            tb in proptest::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..5),
            tc in proptest::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..5),
        ) {
            let mk = |ts: &Vec<(u32, u32, i64)>| {
                let mut p = ABPoly::zero();
                for &(i, j, c) in ts { p.add_term(i, j, big(c)); }
                p
            };
            let (x, y, z) = (mk(&ta), mk(&tb), mk(&tc));
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.mul(&ABPoly::one()), x.clone());
            prop_assert_eq!(x.add(&x.neg()), ABPoly::zero());
        }

        #[test]
        fn abpoly_division_roundtrip(
            ta in proptest::collection::vec((0u32..3, 0u32..3, -4i64..5), 0..4),
            tb in proptest::collection::vec((0u32..3, 0u32..3, -4i64..5), 1..4),
        ) {
            let mk = |ts: &Vec<(u32, u32, i64)>| {
                let mut p = ABPoly::zero();
                for &(i, j, c) in ts { p.add_term(i, j, big(c)); }
                p
            };
            let f = mk(&ta);
            let g = mk(&tb);
            prop_assume!(!g.is_zero());
            let prod = f.mul(&g);
            prop_assert_eq!(prod.exact_div(&g).unwrap(), f);
        }

        #[test]
        fn eval_is_ring_hom(
            ta in proptest::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..5),
            tb in proptest::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..5),
            av in -4i64..5, bv in -4i64..5,
        ) {
            let mk = |ts: &Vec<(u32, u32, i64)>| {
                let mut p = ABPoly::zero();
                for &(i, j, c) in ts { p.add_term(i, j, big(c)); }
                p
            };
            let (x, y) = (mk(&ta), mk(&tb));
            let (a, b) = (rat(av), rat(bv));
            prop_assert_eq!(x.mul(&y).eval(&a, &b), x.eval(&a, &b) * y.eval(&a, &b));
            prop_assert_eq!(x.add(&y).eval(&a, &b), x.eval(&a, &b) + y.eval(&a, &b));
        }

        #[test]
        fn random_bareiss_matches_cofactor(
            entries in proptest::collection::vec(-6i64..7, 9),
        ) {
            let m = ExactMatrix::from_rows(vec![
                entries[0..3].iter().map(|&x| BigInt::from(x)).collect(),
                entries[3..6].iter().map(|&x| BigInt::from(x)).collect(),
                entries[6..9].iter().map(|&x| BigInt::from(x)).collect(),
            ]);
            prop_assert_eq!(m.det_bareiss(), m.det_cofactor());
        }

        #[test]
        fn random_snf_transform(
            entries in proptest::collection::vec(-5i64..6, 6),
        ) {
            let a = IntMat::from_rows(&[entries[0..3].to_vec(), entries[3..6].to_vec()]);
            let snf = smith_normal_form(&a);
            prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s.clone());
            // Diagonal divisibility chain.
            let d: Vec<i64> = (0..2).map(|i| snf.s.get(i, i)).collect();
            if d[0] != 0 && d[1] != 0 {
                prop_assert_eq!(d[1] % d[0], 0);
            }
            prop_assert!(d[0] >= 0 && d[1] >= 0);
        }
    }
}
