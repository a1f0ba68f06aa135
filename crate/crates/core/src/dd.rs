//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`s,
//! about 106 bits of significand. Float-mode series carry their terms and
//! partial sums in this form so cancellation between large terms does not
//! eat the result.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl DoubleDouble {
    pub(crate) const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub(crate) fn from_f64(v: f64) -> Self {
        DoubleDouble { hi: v, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }

    pub(crate) fn add_f64(self, v: f64) -> Self {
        self.add(DoubleDouble::from_f64(v))
    }

    pub(crate) fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }

    pub(crate) fn mul_f64(self, v: f64) -> Self {
        self.mul(DoubleDouble::from_f64(v))
    }

    pub(crate) fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul_f64(-q1));
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul_f64(-q2));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo }.add_f64(q3)
    }

    pub(crate) fn abs_f64(self) -> f64 {
        self.to_f64().abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_bits() {
        let big = DoubleDouble::from_f64(1e16);
        let s = big.add_f64(1.0).add_f64(1.0).add_f64(-1e16);
        assert_eq!(s.to_f64(), 2.0);
    }

    #[test]
    fn division_round_trips() {
        let three = DoubleDouble::from_f64(3.0);
        let third = DoubleDouble::ONE.div(three);
        let back = third.mul(three).add_f64(-1.0);
        assert!(back.to_f64().abs() < 1e-30);
    }
}
