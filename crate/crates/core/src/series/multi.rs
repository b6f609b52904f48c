//! Truncated series in K variables, truncated by total degree.

use std::collections::BTreeMap;

use super::{CoeffRing, Series1, SeriesError};

/// Σ c_e X^e over exponent vectors e with |e| < order.
#[derive(Clone, Debug)]
pub struct SeriesN<R: CoeffRing, const K: usize> {
    ring: R,
    order: usize,
    coeffs: BTreeMap<[usize; K], R::Elem>,
}

/// Two-variable series F(X, Y).
pub type Series2<R> = SeriesN<R, 2>;
/// Three-variable series, used for associativity checks.
pub type Series3<R> = SeriesN<R, 3>;

impl<R: CoeffRing, const K: usize> PartialEq for SeriesN<R, K> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.coeffs == other.coeffs
    }
}

fn total<const K: usize>(e: &[usize; K]) -> usize {
    e.iter().sum()
}

impl<R: CoeffRing, const K: usize> SeriesN<R, K> {
    pub fn zero(ring: &R, order: usize) -> Self {
        SeriesN { ring: ring.clone(), order, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(ring: &R, order: usize, terms: impl IntoIterator<Item = ([usize; K], R::Elem)>) -> Self {
        let mut s = SeriesN::zero(ring, order);
        for (e, c) in terms {
            let sum = ring.add(&s.coeff(e), &c);
            s.set(e, sum);
        }
        s
    }

    pub fn constant(ring: &R, order: usize, c: R::Elem) -> Self {
        SeriesN::from_terms(ring, order, [([0; K], c)])
    }

    /// The i-th variable.
    pub fn var(ring: &R, order: usize, i: usize) -> Self {
        let mut e = [0; K];
        e[i] = 1;
        SeriesN::from_terms(ring, order, [(e, ring.one())])
    }

    /// A one-variable series placed in variable `i`.
    pub fn embed(s: &Series1<R>, i: usize, order: usize) -> Self {
        let mut out = SeriesN::zero(s.ring(), order.min(s.order()));
        for (k, c) in s.terms() {
            let mut e = [0; K];
            e[i] = k;
            out.set(e, c.clone());
        }
        out
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, e: [usize; K]) -> R::Elem {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize; K], &R::Elem)> {
        self.coeffs.iter()
    }

    pub fn set(&mut self, e: [usize; K], c: R::Elem) {
        if total(&e) >= self.order {
            return;
        }
        if self.ring.is_zero(&c) {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        SeriesN {
            ring: self.ring.clone(),
            order,
            coeffs: self.coeffs.iter().filter(|(e, _)| total(e) < order).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(SeriesError::DomainMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let mut out = self.truncate(other.order);
        for (e, c) in &other.coeffs {
            let s = self.ring.add(&out.coeff(*e), c);
            out.set(*e, s);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        SeriesN {
            ring: self.ring.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, self.ring.neg(c))).collect(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = SeriesN::zero(&self.ring, self.order);
        for (e, a) in &self.coeffs {
            out.set(*e, self.ring.mul(a, c));
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let order = self.order.min(other.order);
        let ring = &self.ring;
        let mut acc: BTreeMap<[usize; K], R::Acc> = BTreeMap::new();
        for (ea, a) in &self.coeffs {
            let da = total(ea);
            if da >= order {
                continue;
            }
            for (eb, b) in &other.coeffs {
                if da + total(eb) >= order {
                    continue;
                }
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                ring.acc_mul_add(acc.entry(e).or_insert_with(|| ring.acc_new()), a, b);
            }
        }
        let mut out = SeriesN::zero(ring, order);
        for (e, a) in acc {
            out.set(e, ring.acc_finish(a));
        }
        Ok(out)
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coeff([0; K])
    }

    /// Inverse of a series with unit constant term: c⁻¹ Σ (−t)^k with t = c⁻¹·self − 1.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let ring = &self.ring;
        let cinv = ring.inv(&self.constant_term()).ok_or(SeriesError::NotInvertible)?;
        let one = SeriesN::constant(ring, self.order, ring.one());
        let t = self.scale(&cinv).try_sub(&one)?;
        let minus_t = t.neg();
        let mut acc = one.clone();
        let mut power = one;
        for _ in 1..self.order {
            power = power.try_mul(&minus_t)?;
            if power.is_zero() {
                break;
            }
            acc = acc.try_add(&power)?;
        }
        Ok(acc.scale(&cinv))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_mul(&other.inverse()?)
    }

    /// Substitutes series in M variables for the K variables; each must have zero constant term.
    pub fn substitute<const M: usize>(&self, subs: &[SeriesN<R, M>; K]) -> Result<SeriesN<R, M>, SeriesError> {
        let order = subs.iter().map(|s| s.order).min().unwrap_or(self.order).min(self.order);
        for s in subs {
            if s.ring != self.ring {
                return Err(SeriesError::DomainMismatch);
            }
            if !s.ring.is_zero(&s.constant_term()) {
                return Err(SeriesError::NonzeroConstant);
            }
        }
        let ring = &self.ring;
        let powers: Vec<Vec<SeriesN<R, M>>> = subs
            .iter()
            .map(|s| {
                let s = s.truncate(order);
                let mut v = vec![SeriesN::constant(ring, order, ring.one())];
                for _ in 1..order {
                    let next = v.last().unwrap().try_mul(&s).expect("same ring");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = SeriesN::zero(ring, order);
        for (e, c) in &self.coeffs {
            if total(e) >= order {
                continue;
            }
            let mut term = SeriesN::constant(ring, order, c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.try_mul(&powers[v][k])?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// F(g_1(T), …, g_K(T)) as a one-variable series.
    pub fn compose_series1(&self, subs: &[&Series1<R>; K]) -> Result<Series1<R>, SeriesError> {
        let lifted: [SeriesN<R, 1>; K] = std::array::from_fn(|i| SeriesN::embed(subs[i], 0, subs[i].order()));
        let r = self.substitute(&lifted)?;
        Ok(Series1::from_terms(&self.ring, r.order, r.coeffs.into_iter().map(|(e, c)| (e[0], c))))
    }
}

impl<R: CoeffRing> Series1<R> {
    /// self(inner) for a multivariate inner series with zero constant term.
    pub fn compose_multi<const K: usize>(&self, inner: &SeriesN<R, K>) -> Result<SeriesN<R, K>, SeriesError> {
        let outer: SeriesN<R, 1> = SeriesN::embed(self, 0, self.order());
        outer.substitute(&[inner.clone()])
    }
}

/// F(g(T), h(T)) for a two-variable F.
pub fn series_compose2<R: CoeffRing>(f: &Series2<R>, g: &Series1<R>, h: &Series1<R>) -> Result<Series1<R>, SeriesError> {
    f.compose_series1(&[g, h])
}

macro_rules! multi_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<R: CoeffRing, const K: usize> std::ops::$tr<&SeriesN<R, K>> for &SeriesN<R, K> {
            type Output = SeriesN<R, K>;
            fn $m(self, rhs: &SeriesN<R, K>) -> SeriesN<R, K> {
                self.$f(rhs).expect("series over different coefficient rings")
            }
        }
    };
}
multi_op!(Add, add, try_add);
multi_op!(Sub, sub, try_sub);
multi_op!(Mul, mul, try_mul);
