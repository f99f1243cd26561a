use std::sync::Arc;

use crate::error::{Error, Result};
use crate::padic::{same_ring, ExtensionSpec, RingElement};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// Power series in up to three variables, truncated by total degree: the
/// coefficients of monomials of total degree at most `M` are known.
///
/// Storage is a dense hypercube indexed by `sum e_i (M+1)^{n-1-i}`, with `d`
/// scalars per coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiSeries<S: Scalar> {
    spec: Arc<ExtensionSpec<S>>,
    nvars: usize,
    trunc: usize,
    data: Vec<S>,
}

impl<S: Scalar> std::fmt::Debug for MultiSeries<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self.support().into_iter().map(|(e, c)| format!("{c}*{e:?}")).collect();
        write!(f, "MultiSeries[{}]", terms.join(" + "))
    }
}

impl<S: Scalar> MultiSeries<S> {
    pub fn zero(spec: &Arc<ExtensionSpec<S>>, nvars: usize, trunc: usize) -> Self {
        assert!((1..=3).contains(&nvars), "one to three variables supported");
        let cells = (trunc + 1).pow(nvars as u32);
        MultiSeries { spec: spec.clone(), nvars, trunc, data: vec![S::zero(); cells * spec.degree()] }
    }

    /// The coordinate function `x_i`.
    pub fn var(spec: &Arc<ExtensionSpec<S>>, nvars: usize, i: usize, trunc: usize) -> Self {
        let mut s = Self::zero(spec, nvars, trunc);
        let mut e = vec![0; nvars];
        e[i] = 1;
        if trunc >= 1 {
            s.set_coeff(&e, &RingElement::one(spec));
        }
        s
    }

    /// `f(x_i)` as a series in `nvars` variables.
    pub fn from_univariate(f: &TruncatedSeries<S>, nvars: usize, i: usize, trunc: usize) -> Self {
        let mut s = Self::zero(f.spec(), nvars, trunc);
        let mut e = vec![0; nvars];
        for k in 0..=f.trunc().min(trunc) {
            e[i] = k;
            s.set_coeff_slice(&e, f.coeff_slice(k));
        }
        s
    }

    pub fn spec(&self) -> &Arc<ExtensionSpec<S>> {
        &self.spec
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    fn cell(&self, e: &[usize]) -> usize {
        e.iter().fold(0, |acc, &k| acc * (self.trunc + 1) + k)
    }

    fn exponents(&self, mut cell: usize) -> Vec<usize> {
        let mut e = vec![0; self.nvars];
        for slot in e.iter_mut().rev() {
            *slot = cell % (self.trunc + 1);
            cell /= self.trunc + 1;
        }
        e
    }

    fn slice(&self, cell: usize) -> &[S] {
        let d = self.spec.degree();
        &self.data[cell * d..(cell + 1) * d]
    }

    fn set_coeff_slice(&mut self, e: &[usize], v: &[S]) {
        let d = self.spec.degree();
        let c = self.cell(e);
        self.data[c * d..(c + 1) * d].clone_from_slice(v);
    }

    pub fn coeff(&self, e: &[usize]) -> RingElement<S> {
        assert_eq!(e.len(), self.nvars);
        assert!(e.iter().sum::<usize>() <= self.trunc);
        RingElement::from_raw(&self.spec, self.slice(self.cell(e)).to_vec())
    }

    pub fn set_coeff(&mut self, e: &[usize], c: &RingElement<S>) {
        assert!(same_ring(c.spec(), &self.spec));
        assert!(e.iter().sum::<usize>() <= self.trunc);
        self.set_coeff_slice(e, c.coeffs());
    }

    fn cell_is_zero(&self, cell: usize) -> bool {
        self.slice(cell).iter().all(|c| c.is_zero())
    }

    /// Nonzero coefficients with total degree at most `M`, in index order.
    pub fn support(&self) -> Vec<(Vec<usize>, RingElement<S>)> {
        self.nonzero_cells()
            .into_iter()
            .map(|(cell, e, _)| (e, RingElement::from_raw(&self.spec, self.slice(cell).to_vec())))
            .collect()
    }

    fn nonzero_cells(&self) -> Vec<(usize, Vec<usize>, usize)> {
        let cells = (self.trunc + 1).pow(self.nvars as u32);
        (0..cells)
            .filter(|&c| !self.cell_is_zero(c))
            .filter_map(|c| {
                let e = self.exponents(c);
                let deg: usize = e.iter().sum();
                (deg <= self.trunc).then_some((c, e, deg))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_cells().is_empty()
    }

    /// The first nonzero coefficient in order of total degree.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, RingElement<S>)> {
        self.support().into_iter().min_by_key(|(e, _)| (e.iter().sum::<usize>(), e.clone()))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ring(&self.spec, &other.spec) && self.nvars == other.nvars && self.trunc == other.trunc {
            Ok(())
        } else {
            Err(Error::MismatchedContext)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let data = self.spec.add_vec(&self.data, &other.data);
        Ok(MultiSeries { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let data = self.spec.sub_vec(&self.data, &other.data);
        Ok(MultiSeries { data, ..self.clone() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.spec, self.nvars, self.trunc);
        let a = self.nonzero_cells();
        let b = other.nonzero_cells();
        let d = self.spec.degree();
        for (ca, _, da) in &a {
            for (cb, _, db) in &b {
                if da + db > self.trunc {
                    continue;
                }
                // Exponents add componentwise without carries because each
                // stays at most M.
                let c = ca + cb;
                self.spec.mul_acc(&mut out.data[c * d..(c + 1) * d], self.slice(*ca), other.slice(*cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RingElement<S>) -> Self {
        let mut out = Self::zero(&self.spec, self.nvars, self.trunc);
        let d = self.spec.degree();
        for (cell, _, _) in self.nonzero_cells() {
            let v = self.spec.mul_vec(self.slice(cell), c.coeffs());
            out.data[cell * d..(cell + 1) * d].clone_from_slice(&v);
        }
        out
    }

    /// The homogeneous part of total degree `r`.
    pub fn homogeneous_part(&self, r: usize) -> Vec<(Vec<usize>, RingElement<S>)> {
        self.support().into_iter().filter(|(e, _)| e.iter().sum::<usize>() == r).collect()
    }

    /// Swaps the first two variables.
    pub fn swap01(&self) -> Self {
        let mut out = Self::zero(&self.spec, self.nvars, self.trunc);
        for (_, mut e, _) in self.nonzero_cells() {
            let c = self.coeff(&e);
            e.swap(0, 1);
            out.set_coeff(&e, &c);
        }
        out
    }

    /// `self(args[0], ..., args[n-1])`, each argument a series without
    /// constant term in a common set of variables.
    pub fn substitute(&self, args: &[MultiSeries<S>]) -> Result<Self> {
        if args.len() != self.nvars {
            return Err(Error::MismatchedContext);
        }
        let first = &args[0];
        for a in args {
            first.check(a)?;
            if !a.cell_is_zero(0) {
                return Err(Error::NonzeroConstantTerm);
            }
        }
        let m = first.trunc.min(self.trunc);
        let mut powers: Vec<Vec<MultiSeries<S>>> = Vec::with_capacity(args.len());
        for a in args {
            let mut pw = vec![Self::constant_one(&first.spec, first.nvars, first.trunc)];
            for k in 1..=m {
                let next = pw[k - 1].mul(a)?;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = Self::zero(&first.spec, first.nvars, first.trunc);
        for (cell, e, _) in self.nonzero_cells() {
            let mut term = powers[0][e[0]].clone();
            for (i, &k) in e.iter().enumerate().skip(1) {
                if k > 0 {
                    term = term.mul(&powers[i][k])?;
                }
            }
            let c = RingElement::from_raw(&self.spec, self.slice(cell).to_vec());
            out = out.add(&term.scale(&c))?;
        }
        Ok(out)
    }

    fn constant_one(spec: &Arc<ExtensionSpec<S>>, nvars: usize, trunc: usize) -> Self {
        let mut s = Self::zero(spec, nvars, trunc);
        s.set_coeff(&vec![0; nvars], &RingElement::one(spec));
        s
    }

    /// `f(self)` for a univariate `f`, by Horner's rule.
    pub fn apply(&self, f: &TruncatedSeries<S>) -> Result<Self> {
        if !same_ring(f.spec(), &self.spec) {
            return Err(Error::MismatchedContext);
        }
        if !self.cell_is_zero(0) {
            return Err(Error::NonzeroConstantTerm);
        }
        let top = f.degree().unwrap_or(0).min(self.trunc);
        let mut acc = Self::zero(&self.spec, self.nvars, self.trunc);
        acc.set_coeff_slice(&vec![0; self.nvars], f.coeff_slice(top));
        for i in (0..top).rev() {
            acc = acc.mul(self)?;
            let zero = vec![0; self.nvars];
            let c0 = self.spec.add_vec(acc.slice(0), f.coeff_slice(i));
            acc.set_coeff_slice(&zero, &c0);
        }
        Ok(acc)
    }

    /// Same coefficients re-read at another precision of the same ring.
    pub fn change_precision(&self, spec: &Arc<ExtensionSpec<S>>) -> Self {
        let data = self.data.iter().map(|c| spec.reduce(c.clone())).collect();
        MultiSeries { spec: spec.clone(), nvars: self.nvars, trunc: self.trunc, data }
    }

    /// Drops the terms of total degree above `trunc`.
    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(trunc <= self.trunc);
        let mut out = Self::zero(&self.spec, self.nvars, trunc);
        for (cell, e, deg) in self.nonzero_cells() {
            if deg <= trunc {
                out.set_coeff_slice(&e, self.slice(cell));
            }
        }
        out
    }
}
