//! Dense polynomials over the prime field F_p, used for irreducibility tests.

type Poly = Vec<u64>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    let mut r = a.clone();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = (r[idx] + p - c * mi % p) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a polynomial over F_p, coefficients low
/// degree first. Leading coefficient must be nonzero mod p.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let mut m: Poly = m.iter().map(|c| c % p).collect();
    trim(&mut m);
    if m.len() < 2 {
        return false;
    }
    let d = m.len() - 1;
    if d == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, &m, p);
    for _ in 1..=d / 2 {
        // h <- h^p mod m
        let mut acc: Poly = vec![1];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, &m, p);
            }
            base = mul_mod(&base, &base, &m, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = gcd(&diff, &m, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// First monic irreducible polynomial of degree `d` over F_p in
/// lexicographic order of the lower coefficients.
pub fn first_irreducible(d: usize, p: u64) -> Vec<u64> {
    let total = (p as u128).pow(d as u32);
    for code in 0..total {
        let mut c = code;
        let mut m = Vec::with_capacity(d + 1);
        for _ in 0..d {
            m.push((c % p as u128) as u64);
            c /= p as u128;
        }
        m.push(1);
        if m[0] != 0 && is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics_over_f3() {
        // t^2 + 1 irreducible, t^2 + 2 = (t-1)(t+1), t^2 + t + 2 irreducible
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3));
        assert!(is_irreducible(&[2, 1, 1], 3));
    }

    #[test]
    fn reducible_without_roots() {
        // (t^2+1)^2 over F_3 has no root but is reducible.
        assert!(!is_irreducible(&[1, 0, 2, 0, 1], 3));
    }

    #[test]
    fn quintic_search() {
        let m = first_irreducible(5, 3);
        assert_eq!(m.len(), 6);
        assert!(is_irreducible(&m, 3));
        // brute force: no roots in F_3
        for x in 0..3u64 {
            let v = m.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % 3);
            assert_ne!(v, 0);
        }
    }
}
