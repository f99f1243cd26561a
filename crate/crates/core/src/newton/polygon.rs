use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{Rational, Valuation};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

use super::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "ser_rational")]
    pub slope: Rational,
    pub length: usize,
}

fn ser_rational<Se: serde::Serializer>(r: &Rational, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
    s.serialize_str(&r.to_string())
}

/// Lower convex hull of the points `(i, v(a_i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, Rational)>,
    pub vertices: Vec<(usize, Rational)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Builds the hull with Andrew's monotone chain. Collinear points are
    /// dropped so every segment is maximal.
    pub fn from_points(mut points: Vec<(usize, Rational)>) -> Self {
        points.sort_by_key(|p| p.0);
        points.dedup_by_key(|p| p.0);
        let mut hull: Vec<(usize, Rational)> = Vec::new();
        for &pt in &points {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if cross(a, b, pt) <= Rational::from_integer(0) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let len = w[1].0 - w[0].0;
                Segment { slope: (w[1].1 - w[0].1) / Rational::from_integer(len as i64), length: len }
            })
            .collect();
        NewtonPolygon { points, vertices: hull, segments }
    }

    /// Polygon of a series over the indices up to its Weierstrass degree.
    /// With `strip_zero` the largest power of `x` dividing `f` is removed
    /// first, which only shifts the indices.
    pub fn of_series<S: Scalar>(f: &TruncatedSeries<S>, strip_zero: bool) -> Result<Self> {
        let wideg = f.weierstrass_degree().ok_or(Error::WeierstrassDegreeNotVisible)?;
        let shift = if strip_zero { f.x_order().unwrap_or(0) } else { 0 };
        let points = (0..=wideg)
            .filter_map(|i| match f.coeff(i).valuation() {
                Valuation::Finite(v) => Some((i - shift, v)),
                Valuation::Infinite => None,
            })
            .collect();
        Ok(Self::from_points(points))
    }

    /// Polygon over every coefficient of a polynomial.
    pub fn of_polynomial<S: Scalar>(f: &Polynomial<S>) -> Self {
        let points =
            f.coeffs().iter().enumerate().filter_map(|(i, c)| c.valuation().finite().map(|v| (i, v))).collect();
        Self::from_points(points)
    }

    /// `(valuation, count)` pairs read off the negative-slope segments,
    /// largest valuation first.
    pub fn root_valuations(&self) -> Vec<(Rational, usize)> {
        let zero = Rational::from_integer(0);
        self.segments.iter().filter(|s| s.slope < zero).map(|s| (-s.slope, s.length)).collect()
    }
}

/// `(b - a) x (c - a)`; positive for a left turn.
fn cross(a: (usize, Rational), b: (usize, Rational), c: (usize, Rational)) -> Rational {
    let (abx, aby) = (Rational::from_integer(b.0 as i64 - a.0 as i64), b.1 - a.1);
    let (acx, acy) = (Rational::from_integer(c.0 as i64 - a.0 as i64), c.1 - a.1);
    abx * acy - aby * acx
}

/// Multiset of root valuations keyed by valuation.
pub type ValuationMultiset = BTreeMap<Rational, usize>;

pub fn to_multiset(pairs: &[(Rational, usize)]) -> ValuationMultiset {
    let mut m = ValuationMultiset::new();
    for &(v, c) in pairs {
        *m.entry(v).or_default() += c;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ExtensionSpec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn collinear_points_merge() {
        let np = NewtonPolygon::from_points(vec![(0, r(2, 1)), (1, r(1, 1)), (2, r(0, 1))]);
        assert_eq!(np.segments, vec![Segment { slope: r(-1, 1), length: 2 }]);
        assert_eq!(np.vertices.len(), 2);
    }

    #[test]
    fn worked_example_polygons() {
        let z = ExtensionSpec::<i128>::zp(3, 20).unwrap();
        let f_f = TruncatedSeries::from_ints(&z, &[0, 3, 0, 1], 20);
        let np = NewtonPolygon::of_series(&f_f, true).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: r(-1, 2), length: 2 }]);
        assert_eq!(np.root_valuations(), vec![(r(1, 2), 2)]);

        let f = TruncatedSeries::from_ints(&z, &[0, 9, 6, 1], 20);
        let np = NewtonPolygon::of_series(&f, true).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: r(-1, 1), length: 2 }]);

        let g = TruncatedSeries::from_ints(&z, &[0, 81, 540, 1386, 1782, 1287, 546, 135, 18, 1], 20);
        let np = NewtonPolygon::of_series(&g, true).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: r(-1, 1), length: 2 }, Segment { slope: r(-1, 3), length: 6 }]);
        assert_eq!(np.root_valuations(), vec![(r(1, 1), 2), (r(1, 3), 6)]);

        let lin = TruncatedSeries::from_ints(&z, &[3, 1], 4);
        assert_eq!(NewtonPolygon::of_series(&lin, false).unwrap().root_valuations(), vec![(r(1, 1), 1)]);
    }

    #[test]
    fn invisible_wideg() {
        let z = ExtensionSpec::<i128>::zp(3, 20).unwrap();
        let s = TruncatedSeries::from_ints(&z, &[0, 3, 3], 2);
        assert_eq!(NewtonPolygon::of_series(&s, true).unwrap_err(), Error::WeierstrassDegreeNotVisible);
    }
}
