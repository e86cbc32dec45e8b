//! Factorization of univariate rational polynomials: squarefree
//! decomposition, factorization modulo a small prime (Cantor-Zassenhaus),
//! Hensel lifting and recombination of lifted factors.

use super::qpoly::{self, QPoly};
use super::Rational;
use num::{BigInt, BigUint, Integer, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type ZPoly = Vec<BigInt>;
type FpPoly = Vec<u64>;

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor_rational(f: &[Rational]) -> Vec<(QPoly, usize)> {
    let mut out = Vec::new();
    for (g, e) in qpoly::squarefree_decomposition(f) {
        for h in factor_squarefree(&g) {
            out.push((h, e));
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

pub fn is_irreducible(f: &[Rational]) -> bool {
    let f = qpoly::trimmed(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    if f.len() == 2 {
        return true;
    }
    let fs = factor_rational(&f);
    fs.len() == 1 && fs[0].1 == 1
}

fn factor_squarefree(g: &[Rational]) -> Vec<QPoly> {
    if g.len() <= 2 {
        return vec![qpoly::monic(g)];
    }
    let z = qpoly::to_primitive_integer(g);
    let mut out = Vec::new();
    // pull out powers of x first
    let lead_zeros = z.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        out.push(vec![Rational::zero(), Rational::one()]);
    }
    let z: ZPoly = z[lead_zeros..].to_vec();
    if z.len() >= 2 {
        for h in zassenhaus(&z) {
            out.push(qpoly::monic(&qpoly::from_integers(&h)));
        }
    }
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|n| {
        (3..)
            .step_by(2)
            .take_while(|d| d * d <= *n)
            .all(|d| n % d != 0)
    })
}

fn zmod(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

/// Factors a primitive squarefree integer polynomial of degree ≥ 1.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.clone()];
    }
    let lc = f[n].clone();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if zmod(&lc, p) == 0 {
            continue;
        }
        let fp: FpPoly = f.iter().map(|c| zmod(c, p)).collect();
        let fp = fp_monic(&fp, p);
        if fp_gcd(&fp, &fp_deriv(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = fp_factor(&fp, p);
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, facs) = best.expect("a suitable prime exists");
    let bound = coefficient_bound(f);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
    }
    let lcinv = lc.modinv(&modulus).expect("lc invertible");
    let fmonic: ZPoly = f.iter().map(|c| (c * &lcinv).mod_floor(&modulus)).collect();
    let lifted = hensel_lift_all(&fmonic, &facs, p, &modulus);
    recombine(f, lifted, &modulus)
}

/// `2 * |lc| * 2^n * ||f||_2`, a bound on twice the coefficients of `lc(f)/lc(g) * g`.
fn coefficient_bound(f: &ZPoly) -> BigInt {
    let n = f.len() - 1;
    let sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = sq.sqrt() + BigInt::one();
    BigInt::from(2) * f[n].abs() * (BigInt::one() << n) * norm
}

fn recombine(f: &ZPoly, mut us: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= us.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = rest.last().expect("nonzero").clone();
            let mut g: ZPoly = vec![lc];
            for &i in &idx {
                g = zmod_mul(&g, &us[i], m);
            }
            let g = primitive(&symmetric(&g, m));
            if let Some(q) = zdiv_exact(&rest, &g) {
                out.push(g);
                rest = q;
                for &i in idx.iter().rev() {
                    us.remove(i);
                }
                continue 'outer;
            }
            if !next_combination(&mut idx, us.len()) {
                break;
            }
        }
        s += 1;
    }
    if rest.len() > 1 {
        out.push(primitive(&rest));
    }
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn symmetric(g: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    g.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn primitive(g: &ZPoly) -> ZPoly {
    let mut g = g.clone();
    while g.last().is_some_and(|c| c.is_zero()) {
        g.pop();
    }
    let mut c = BigInt::zero();
    for x in &g {
        c = c.gcd(x);
    }
    if g.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    if c.is_zero() {
        return g;
    }
    g.iter().map(|x| x / &c).collect()
}

fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return None;
    }
    if !b[0].is_zero() && !r[0].is_zero() && !r[0].is_multiple_of(&b[0]) {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let top = &r[i + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        for j in 0..=db {
            r[i + j] -= &c * &b[j];
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

// ---- arithmetic modulo a big modulus ----

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmod_reduce(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zmod_add(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zmod_reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
        m,
    )
}

fn zmod_sub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zmod_reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
        m,
    )
}

fn zmod_mul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zmod_reduce(&out, m)
}

/// Division by a monic polynomial modulo `m`.
fn zmod_divrem(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = zmod_reduce(a, m);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i + j] = (&r[i + j] - &c * &b[j]).mod_floor(m);
        }
        q[i] = c;
    }
    (ztrim(q), ztrim(r))
}

fn to_z(a: &FpPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: `f ≡ g h (mod m)`, `s g + t h ≡ 1 (mod m)`, `h` monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = zmod_sub(f, &zmod_mul(g, h, m), m);
    let (q, r) = zmod_divrem(&zmod_mul(s, &e, m), h, m);
    let g1 = zmod_add(&zmod_add(g, &zmod_mul(t, &e, m), m), &zmod_mul(&q, g, m), m);
    let h1 = zmod_add(h, &r, m);
    let b = zmod_sub(
        &zmod_add(&zmod_mul(s, &g1, m), &zmod_mul(t, &h1, m), m),
        &vec![BigInt::one()],
        m,
    );
    let (c, d) = zmod_divrem(&zmod_mul(s, &b, m), &h1, m);
    let s1 = zmod_sub(s, &d, m);
    let t1 = zmod_sub(
        &zmod_sub(t, &zmod_mul(t, &b, m), m),
        &zmod_mul(&c, &g1, m),
        m,
    );
    (g1, h1, s1, t1)
}

/// Lifts `f ≡ g h (mod p)` with monic factors to modulus `target`.
fn hensel_pair(f: &ZPoly, g: &FpPoly, h: &FpPoly, p: u64, target: &BigInt) -> (ZPoly, ZPoly) {
    let (_, s, t) = fp_ext_gcd(g, h, p);
    let (mut g, mut h, mut s, mut t) = (to_z(g), to_z(h), to_z(&s), to_z(&t));
    let mut m = BigInt::from(p);
    while &m < target {
        let m2 = (&m * &m).min(target.clone());
        let fm = zmod_reduce(f, &m2);
        let next = hensel_step(&fm, &g, &h, &s, &t, &m2);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = m2;
    }
    (g, h)
}

fn hensel_lift_all(f: &ZPoly, facs: &[FpPoly], p: u64, target: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![zmod_reduce(f, target)];
    }
    let mid = facs.len() / 2;
    let mut g: FpPoly = vec![1];
    for a in &facs[..mid] {
        g = fp_mul(&g, a, p);
    }
    let mut h: FpPoly = vec![1];
    for a in &facs[mid..] {
        h = fp_mul(&h, a, p);
    }
    let (gl, hl) = hensel_pair(f, &g, &h, p, target);
    let mut out = hensel_lift_all(&gl, &facs[..mid], p, target);
    out.extend(hensel_lift_all(&hl, &facs[mid..], p, target));
    out
}

// ---- arithmetic modulo a small prime ----

fn fp_trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn fp_monic(a: &FpPoly, p: u64) -> FpPoly {
    let a = fp_trim(a.clone());
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = invmod(l, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

fn fp_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    fp_trim(out)
}

fn fp_divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let mut r = fp_trim(a.clone());
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = invmod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = mulmod(r[i + db], inv, p);
        if c == 0 {
            continue;
        }
        for j in 0..=db {
            r[i + j] = (r[i + j] + p - mulmod(c, b[j], p)) % p;
        }
        q[i] = c;
    }
    (fp_trim(q), fp_trim(r))
}

fn fp_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let mut x = fp_trim(a.clone());
    let mut y = fp_trim(b.clone());
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

fn fp_ext_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = invmod(*r0.last().expect("coprime"), p);
    let sc = |v: &FpPoly| fp_trim(v.iter().map(|&c| mulmod(c, inv, p)).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

fn fp_deriv(a: &FpPoly, p: u64) -> FpPoly {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

fn fp_powmod(base: &FpPoly, e: &BigUint, m: &FpPoly, p: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let base = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = fp_divrem(&fp_mul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = fp_divrem(&fp_mul(&acc, &base, p), m, p).1;
        }
    }
    acc
}

/// Monic irreducible factors of a monic squarefree polynomial over `F_p`.
fn fp_factor(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut rest = f.clone();
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 1;
    while 2 * d < rest.len() {
        h = fp_powmod(&h, &pb, &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            equal_degree(&g, d, p, &mut rng, &mut out);
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(fp_monic(&rest, p));
    }
    out.sort();
    out
}

fn equal_degree(g: &FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    if g.len() - 1 == d {
        out.push(fp_monic(g, p));
        return;
    }
    let e: BigUint = (num::pow(BigUint::from(p), d) - BigUint::one()) >> 1;
    loop {
        let a: FpPoly = fp_trim((0..g.len() - 1).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, g, p), &vec![1], p);
        let u = fp_gcd(&b, g, p);
        if u.len() > 1 && u.len() < g.len() {
            let v = fp_divrem(g, &u, p).0;
            equal_degree(&u, d, p, rng, out);
            equal_degree(&v, d, p, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::qpoly::{from_ints, mul};

    #[test]
    fn splits_product_of_quadratics() {
        let a = from_ints(&[-2, 0, 1]);
        let b = from_ints(&[1, 1, 1]);
        let f = factor_rational(&mul(&a, &b));
        assert_eq!(f, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime
        assert!(is_irreducible(&from_ints(&[1, 0, -10, 0, 1])));
    }

    #[test]
    fn conjugate_minpoly_is_irreducible() {
        assert!(is_irreducible(&from_ints(&[-2, 1, -4, 1])));
        assert!(!is_irreducible(&from_ints(&[-1, 0, 0, 1])));
    }

    #[test]
    fn non_monic_factors() {
        // (2x - 1)(3x + 2)(x^2 + 1)
        let f = mul(
            &mul(&from_ints(&[-1, 2]), &from_ints(&[2, 3])),
            &from_ints(&[1, 0, 1]),
        );
        let fs = factor_rational(&f);
        assert_eq!(fs.len(), 3);
        let prod = fs
            .iter()
            .fold(vec![Rational::one()], |acc, (g, _)| mul(&acc, g));
        assert_eq!(prod, qpoly::monic(&f));
    }
}
