use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::padic::{ExtensionSpec, Rational, RingElement, Valuation};
use crate::scalar::Scalar;

/// Largest residue field `roots_in_ring` will enumerate.
pub const MAX_RESIDUE_FIELD: u128 = 1 << 16;

/// Newton iteration `a <- a - f(a)/f'(a)` from `a0`, valid whenever
/// `v(f(a0)) > 2 v(f'(a0))`. The result satisfies `f(a) = 0` modulo `p^N`.
pub fn hensel_lift<S: Scalar>(f: &Polynomial<S>, a0: &RingElement<S>) -> Result<RingElement<S>> {
    let f = f.base_change(a0.spec())?;
    let df = f.derivative();
    let f_val = f.eval(a0).valuation();
    let df_val = df.eval(a0).valuation();
    if f_val.is_infinite() {
        return Ok(a0.clone());
    }
    if f_val <= df_val + df_val {
        return Err(Error::HenselConditionFailed { f_val, df_val });
    }
    let spec = a0.spec();
    let digits = spec.precision() as u64 * spec.ramification_index() as u64;
    let cap = (64 - digits.leading_zeros()) as usize + 4;
    let mut a = a0.clone();
    for _ in 0..cap {
        let fa = f.eval(&a);
        if fa.is_zero() {
            return Ok(a);
        }
        let (step, _) = fa.exact_div(&df.eval(&a))?;
        a = &a - &step;
    }
    if f.eval(&a).is_zero() {
        Ok(a)
    } else {
        Err(Error::HenselNoConvergence(cap))
    }
}

/// Number of times `x - r` divides `f` with remainder valuation at least
/// `N/2`. Exact multiplicity is not decidable at finite precision; this is
/// the documented surrogate.
pub fn multiplicity_at_precision<S: Scalar>(f: &Polynomial<S>, r: &RingElement<S>) -> Result<usize> {
    let mut g = f.base_change(r.spec())?;
    let threshold = r.spec().horizon() / Rational::from_integer(2);
    let mut count = 0;
    while g.degree() > 0 {
        let (q, rem) = g.divide_linear(r);
        if !rem.valuation().at_least(threshold) {
            break;
        }
        count += 1;
        g = q;
    }
    Ok(count)
}

/// Representatives of the residue field with balanced digits, so that small
/// integers such as `-1` are hit exactly.
pub fn residue_representatives<S: Scalar>(spec: &Arc<ExtensionSpec<S>>) -> Result<Vec<RingElement<S>>> {
    let q = spec.residue_cardinality();
    let q_small = q.to_u128().filter(|&q| q <= MAX_RESIDUE_FIELD);
    let Some(q_small) = q_small else {
        return Err(Error::ResidueFieldTooLarge(q.to_u128().unwrap_or(u128::MAX)));
    };
    let p = spec.p() as i64;
    let digits: Vec<i64> = if p == 2 { vec![0, 1] } else { (-(p - 1) / 2..=(p - 1) / 2).collect() };
    let coords = spec.residue_degree() as usize;
    let mut out = Vec::with_capacity(q_small as usize);
    let mut idx = vec![0usize; coords];
    loop {
        let cs: Vec<BigInt> = idx.iter().map(|&i| BigInt::from(digits[i])).collect();
        out.push(RingElement::from_bigints(spec, &cs)?);
        let mut k = 0;
        while k < coords {
            idx[k] += 1;
            if idx[k] < digits.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == coords {
            break;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub struct RootSearchOptions {
    /// Number of uniformizer digits the search may fix around a residue.
    pub max_depth: u32,
    pub node_budget: usize,
}

impl RootSearchOptions {
    pub fn for_spec<S: Scalar>(spec: &ExtensionSpec<S>) -> Self {
        RootSearchOptions { max_depth: 3 * spec.ramification_index(), node_budget: 20_000 }
    }
}

#[derive(Clone, Debug)]
pub struct FoundRoot<S: Scalar> {
    pub root: RingElement<S>,
    pub multiplicity: usize,
    /// True when the root came out of a Hensel lift rather than an exact hit
    /// on a digit expansion.
    pub hensel_certified: bool,
}

#[derive(Clone, Debug)]
pub struct RootSearch<S: Scalar> {
    pub roots: Vec<FoundRoot<S>>,
    /// Residues that are roots of `f` and of `f'` modulo the maximal ideal;
    /// simple Hensel lifting does not apply there.
    pub singular_residues: Vec<RingElement<S>>,
    /// Set when the node budget ran out before the search finished.
    pub exhausted: bool,
    /// Centers of disks at the depth limit that may still hold roots the
    /// search did not isolate. Empty means the listed roots are all of them.
    pub unresolved: Vec<RingElement<S>>,
}

/// Roots of `f` in the ring `spec`: residue enumeration, Hensel lifting for
/// simple residues, and a bounded digit-by-digit search inside singular
/// residue classes.
pub fn roots_in_ring<S: Scalar>(f: &Polynomial<S>, spec: &Arc<ExtensionSpec<S>>) -> Result<RootSearch<S>> {
    roots_in_ring_with(f, spec, RootSearchOptions::for_spec(spec))
}

pub fn roots_in_ring_with<S: Scalar>(
    f: &Polynomial<S>,
    spec: &Arc<ExtensionSpec<S>>,
    opts: RootSearchOptions,
) -> Result<RootSearch<S>> {
    let f = f.base_change(spec)?;
    let residues = residue_representatives(spec)?;
    let mut search = Search {
        f: &f,
        df: f.derivative(),
        pi: RingElement::uniformizer(spec),
        digits: residues.clone(),
        e: Rational::from_integer(spec.ramification_index() as i64),
        opts,
        nodes: 0,
        found: Vec::new(),
        unresolved: Vec::new(),
    };
    let mut singular_residues = Vec::new();
    for r in &residues {
        let fr = f.eval(r).valuation();
        if !fr.is_positive() {
            continue;
        }
        if f.derivative().eval(r).valuation().is_positive() {
            singular_residues.push(r.clone());
        }
        let pi1 = search.pi.clone();
        search.visit(r, 1, &pi1)?;
    }
    let exhausted = search.nodes > opts.node_budget;
    let threshold = spec.horizon() / Rational::from_integer(2);
    let mut roots: Vec<FoundRoot<S>> = Vec::new();
    for (root, certified) in search.found {
        if let Some(existing) = roots.iter_mut().find(|r| (&r.root - &root).valuation().at_least(threshold)) {
            existing.hensel_certified |= certified;
            continue;
        }
        let multiplicity = multiplicity_at_precision(&f, &root)?;
        roots.push(FoundRoot { root, multiplicity, hensel_certified: certified });
    }
    let unresolved = search.unresolved;
    Ok(RootSearch { roots, singular_residues, exhausted, unresolved })
}

struct Search<'a, S: Scalar> {
    f: &'a Polynomial<S>,
    df: Polynomial<S>,
    pi: RingElement<S>,
    digits: Vec<RingElement<S>>,
    e: Rational,
    opts: RootSearchOptions,
    nodes: usize,
    found: Vec<(RingElement<S>, bool)>,
    unresolved: Vec<RingElement<S>>,
}

impl<S: Scalar> Search<'_, S> {
    /// `a` is fixed modulo `pi^depth`; `pi_depth = pi^depth`.
    fn visit(&mut self, a: &RingElement<S>, depth: u32, pi_depth: &RingElement<S>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.opts.node_budget {
            return Ok(());
        }
        let disk = Rational::from_integer(depth as i64) / self.e;
        let fa = self.f.eval(a).valuation();
        if !fa.at_least(disk) {
            return Ok(());
        }
        let dfa = self.df.eval(a).valuation();
        let hensel = fa > dfa + dfa;
        if hensel {
            let root = hensel_lift(self.f, a)?;
            self.found.push((root, true));
            // The lifted root is the only one with v(x - a) > v(f'(a)).
            if dfa < Valuation::Finite(disk) {
                return Ok(());
            }
        } else if fa.is_infinite() {
            self.found.push((a.clone(), false));
        }
        if depth >= self.opts.max_depth {
            if !hensel && !fa.is_infinite() {
                self.unresolved.push(a.clone());
            }
            return Ok(());
        }
        let next_pi = pi_depth * &self.pi;
        for i in 0..self.digits.len() {
            let child = a + &(pi_depth * &self.digits[i]);
            self.visit(&child, depth + 1, &next_pi)?;
        }
        Ok(())
    }
}

/// Whether every root listed is a root of `f` at the working precision.
pub fn certify_roots<S: Scalar>(f: &Polynomial<S>, roots: &[RingElement<S>]) -> Result<()> {
    for (index, r) in roots.iter().enumerate() {
        if !f.base_change(r.spec())?.eval(r).is_zero() {
            return Err(Error::NotARoot { index });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PrimeContext;

    fn zp(n: u32) -> Arc<ExtensionSpec<i128>> {
        ExtensionSpec::zp(3, n).unwrap()
    }

    #[test]
    fn hensel_examples() {
        let z = zp(10);
        let f = Polynomial::from_ints(&z, &[2, 0, 1]);
        let a = hensel_lift(&f, &RingElement::from_int(&z, 1)).unwrap();
        assert!(f.eval(&a).is_zero());
        assert_eq!(a.coeffs()[0] % 9, 4);
        let lin = Polynomial::from_ints(&z, &[-5, 1]);
        assert_eq!(hensel_lift(&lin, &RingElement::from_int(&z, 5)).unwrap(), RingElement::from_int(&z, 5));
        let bad = Polynomial::from_ints(&z, &[3, 0, 1]);
        assert!(matches!(hensel_lift(&bad, &RingElement::zero(&z)), Err(Error::HenselConditionFailed { .. })));
    }

    #[test]
    fn hensel_with_nonunit_derivative() {
        // x^2 - 17 over Z_2: 1 is a root mod 16 and f'(1) = 2.
        let z = ExtensionSpec::<i128>::zp(2, 30).unwrap();
        let f = Polynomial::from_ints(&z, &[-17, 0, 1]);
        let a = hensel_lift(&f, &RingElement::from_int(&z, 1)).unwrap();
        assert!(f.eval(&a).is_zero());
    }

    #[test]
    fn roots_of_f() {
        let z = zp(20);
        let f = Polynomial::from_ints(&z, &[0, 9, 6, 1]);
        let found = roots_in_ring(&f, &z).unwrap();
        assert_eq!(found.singular_residues, vec![RingElement::zero(&z)]);
        let zero = found.roots.iter().find(|r| r.root.is_zero()).unwrap();
        assert_eq!(zero.multiplicity, 1);
        let m3 = found.roots.iter().find(|r| r.root == RingElement::from_int(&z, -3)).unwrap();
        assert_eq!(m3.multiplicity, 2);
        assert_eq!(found.roots.len(), 2);
    }

    #[test]
    fn roots_in_extensions() {
        let ctx = PrimeContext::new(3, 12).unwrap();
        let g = ExtensionSpec::<i128>::unramified(ctx, &[1, 0, 1].map(BigInt::from)).unwrap();
        let f = Polynomial::from_ints(&zp(12), &[1, 0, 1]);
        let found = roots_in_ring(&f, &g).unwrap();
        let t = RingElement::generator(&g);
        assert_eq!(found.roots.len(), 2);
        assert!(found.roots.iter().any(|r| r.root == t));
        assert!(found.roots.iter().any(|r| r.root == -&t));

        let e = ExtensionSpec::<i128>::eisenstein(ctx, &[3, 0, 1].map(BigInt::from)).unwrap();
        let f = Polynomial::from_ints(&zp(12), &[3, 0, 1]);
        let found = roots_in_ring(&f, &e).unwrap();
        let t = RingElement::generator(&e);
        assert_eq!(found.roots.len(), 2);
        assert!(found.roots.iter().any(|r| r.root == t));
        assert!(found.roots.iter().any(|r| r.root == -&t));
    }

    #[test]
    fn no_roots_without_extension() {
        let z = zp(12);
        let f = Polynomial::from_ints(&z, &[3, 0, 1]);
        assert!(roots_in_ring(&f, &z).unwrap().roots.is_empty());
    }

    #[test]
    fn depth_limit_is_reported() {
        // -2 and -20 agree mod 9 and f'(-2) has valuation 3, so Hensel needs
        // four digits; the default search stops at three.
        let z = zp(12);
        let rs: Vec<_> = [-2, -20, 0].iter().map(|&a| RingElement::from_int(&z, a)).collect();
        let f = Polynomial::from_roots(&z, &rs).unwrap().mul(&Polynomial::from_ints(&z, &[1, -10, 3])).unwrap();
        let quick = roots_in_ring(&f, &z).unwrap();
        assert!(!quick.unresolved.is_empty());
        let deep = roots_in_ring_with(&f, &z, RootSearchOptions { max_depth: 12, node_budget: 20_000 }).unwrap();
        assert!(deep.unresolved.is_empty());
        for r in &rs {
            assert!(deep.roots.iter().any(|x| x.root == *r), "{r}");
        }
    }
}
