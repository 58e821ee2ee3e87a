//! Minimization of Weierstrass equations at a single prime.

mod normal;

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::quadfield::{KElement, PrimeIdeal};
use crate::weier::{EqTransform, WeierstrassEq};

pub use normal::is_normal_at;
pub(crate) use normal::{is_integral_at, normalize_y, reduce_poly};

pub const DEFAULT_NODE_CAP: usize = 5000;

/// x = a x' + r, y = b y' + h(x), with h written in the old x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalChange {
    pub a: KElement,
    pub r: KElement,
    pub b: KElement,
    pub h: Poly,
}

impl LocalChange {
    pub fn identity(field: crate::quadfield::FieldSpec) -> Self {
        LocalChange {
            a: KElement::one(field),
            r: KElement::zero(field),
            b: KElement::one(field),
            h: Poly::zero(field),
        }
    }

    /// self, followed by `next` expressed in the coordinates self produces.
    pub fn then(&self, next: &LocalChange) -> LocalChange {
        let ai = self.a.inv().unwrap();
        let back = next.h.substitute_affine(&ai, &-(&self.r * &ai));
        LocalChange {
            a: &self.a * &next.a,
            r: &(&self.a * &next.r) + &self.r,
            b: &self.b * &next.b,
            h: back.scale(&self.b).add(&self.h),
        }
    }

    pub fn apply(&self, eq: &WeierstrassEq) -> WeierstrassEq {
        let field = eq.field();
        let p = eq.p().substitute_affine(&self.a, &self.r);
        let q = eq.q().substitute_affine(&self.a, &self.r);
        let h = self.h.substitute_affine(&self.a, &self.r);
        let moved = WeierstrassEq::new(field, eq.genus(), p, q).expect("degrees preserved");
        normal::shift_scale_y(&moved, &self.b, &h)
    }

    pub fn to_transform(&self, genus: usize) -> EqTransform {
        EqTransform::from_local(genus, &self.a, &self.r, &self.b, &self.h).expect("invertible")
    }
}

/// A local integral model at one prime, with the change of variables reaching it.
#[derive(Debug, Clone)]
pub struct LocalModelData {
    pub prime: PrimeIdeal,
    pub equation: WeierstrassEq,
    pub change: LocalChange,
    pub v_delta: i64,
    pub va: i64,
    pub vb: i64,
}

impl LocalModelData {
    /// Checks integrality and the discriminant law against `input`.
    pub fn new(input: &WeierstrassEq, prime: &PrimeIdeal, change: LocalChange) -> Result<Self> {
        let g = input.genus() as i64;
        let equation = change.apply(input);
        let equation = if input.is_pointed() && equation.has_pointed_shape() {
            equation.with_pointed(true)?
        } else {
            equation
        };
        if !is_integral_at(&equation, prime) {
            return Err(Error::Precondition(format!("local model at {prime} is not integral")));
        }
        let v_delta = prime.valuation(&equation.discriminant()?);
        let va = prime.valuation(&change.a);
        let vb = prime.valuation(&change.b);
        let v_in = prime.valuation(&input.discriminant()?);
        if v_in != 4 * (2 * g + 1) * vb - 2 * (g + 1) * (2 * g + 1) * va + v_delta {
            return Err(Error::Precondition("discriminant law violated".into()));
        }
        Ok(LocalModelData { prime: prime.clone(), equation, change, v_delta, va, vb })
    }

    pub fn transform(&self) -> EqTransform {
        self.change.to_transform(self.equation.genus())
    }
}

/// The normal model over the x-vertex x = a x' + r.
pub fn model_at_vertex(
    eq: &WeierstrassEq,
    prime: &PrimeIdeal,
    a: &KElement,
    r: &KElement,
) -> Result<LocalModelData> {
    let field = eq.field();
    let xmove = LocalChange { a: a.clone(), r: r.clone(), b: KElement::one(field), h: Poly::zero(field) };
    let yn = normalize_y(&xmove.apply(eq), prime)?;
    let ystep = LocalChange { a: KElement::one(field), r: KElement::zero(field), b: yn.b, h: yn.h };
    LocalModelData::new(eq, prime, xmove.then(&ystep))
}

/// Options for the model search.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub node_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_cap: DEFAULT_NODE_CAP }
    }
}

fn is_char2(prime: &PrimeIdeal) -> bool {
    *prime.p() == BigInt::from(2)
}

/// Sum of the p-adic digits of r below position m.
fn truncate(prime: &PrimeIdeal, pi: &KElement, r: &KElement, m: i64) -> KElement {
    let mut rem = r.clone();
    let mut out = KElement::zero(r.field());
    while !rem.is_zero() {
        let j = prime.valuation(&rem);
        if j >= m {
            break;
        }
        let pj = pi.pow(j);
        let d = prime.reduce(&(&rem / &pj)).expect("unit part");
        let term = &prime.lift(&d) * &pj;
        out = &out + &term;
        rem = &rem - &term;
    }
    out
}

struct VertexModel {
    eq: WeierstrassEq,
    change: LocalChange,
    v_delta: i64,
}

fn vertex_model(
    input: &WeierstrassEq,
    v_in: i64,
    prime: &PrimeIdeal,
    pi: &KElement,
    n: i64,
    r: &KElement,
) -> Result<VertexModel> {
    let g = input.genus() as i64;
    let field = input.field();
    let a = pi.pow(n);
    let xmove = LocalChange { a: a.clone(), r: r.clone(), b: KElement::one(field), h: Poly::zero(field) };
    let eq_x = xmove.apply(input);
    let yn = normalize_y(&eq_x, prime)?;
    let step = LocalChange { a: KElement::one(field), r: KElement::zero(field), b: yn.b, h: yn.h };
    let change = xmove.then(&step);
    let v_delta = v_in - 4 * (2 * g + 1) * yn.k + 2 * (g + 1) * (2 * g + 1) * n;
    Ok(VertexModel { eq: yn.eq, change, v_delta })
}

/// Directions out of a vertex worth exploring: Some(s) for a child, None for the parent.
fn directions(prime: &PrimeIdeal, vm: &VertexModel) -> Result<Vec<Option<crate::quadfield::Fe>>> {
    let k = prime.residue_field();
    if is_char2(prime) {
        let mut out: Vec<_> = k.elements().into_iter().map(Some).collect();
        out.push(None);
        return Ok(out);
    }
    let g = vm.eq.genus();
    let f = vm.eq.f_poly();
    let c = prime.valuation_poly(&f);
    let fbar = reduce_poly(prime, &f.scale(&prime.uniformizer().pow(-c)))?;
    let mut out = Vec::new();
    for s in k.roots(&fbar) {
        if k.root_multiplicity(&fbar, &s) > g {
            out.push(Some(s));
        }
    }
    let deg = fbar.len() - 1;
    if 2 * g + 2 - deg > g {
        out.push(None);
    }
    Ok(out)
}

/// Search the tree of x-coordinates for an integral model of least discriminant.
pub fn minimize_at(eq: &WeierstrassEq, prime: &PrimeIdeal) -> Result<LocalModelData> {
    minimize_at_with(eq, prime, SearchOptions::default())
}

pub fn minimize_at_with(
    eq: &WeierstrassEq,
    prime: &PrimeIdeal,
    opts: SearchOptions,
) -> Result<LocalModelData> {
    let g = eq.genus() as i64;
    let step = 2 * (2 * g + 1);
    let v_in = prime.valuation(&eq.discriminant()?);
    let pi = prime.uniformizer();
    let field = eq.field();
    let start = vertex_model(eq, v_in, prime, &pi, 0, &KElement::zero(field))?;
    let ceiling = start.v_delta + 2 * step * (g + 1);
    let mut best_change = start.change.clone();
    let mut best_v = start.v_delta;
    let mut seen: HashSet<(i64, KElement)> = HashSet::new();
    let mut queue: VecDeque<(i64, KElement, VertexModel)> = VecDeque::new();
    seen.insert((0, KElement::zero(field)));
    queue.push_back((0, KElement::zero(field), start));
    let mut nodes = 0usize;
    while let Some((n, r, vm)) = queue.pop_front() {
        if best_v < step {
            break;
        }
        nodes += 1;
        if nodes > opts.node_cap {
            return Err(Error::SearchBudgetExceeded(opts.node_cap));
        }
        if vm.v_delta < best_v {
            best_v = vm.v_delta;
            best_change = vm.change.clone();
            if best_v < step {
                break;
            }
        }
        if is_char2(prime) && vm.v_delta > ceiling {
            continue;
        }
        for dir in directions(prime, &vm)? {
            let (n2, r2) = match dir {
                Some(s) => (n + 1, &r + &(&prime.lift(&s) * &pi.pow(n))),
                None => (n - 1, truncate(prime, &pi, &r, n - 1)),
            };
            if seen.insert((n2, r2.clone())) {
                let m = vertex_model(eq, v_in, prime, &pi, n2, &r2)?;
                queue.push_back((n2, r2, m));
            }
        }
    }
    LocalModelData::new(eq, prime, best_change)
}

/// Minimal pointed model: only x = u^2 x' + r, y = u^{2g+1} y' + h(x) with deg h <= g.
pub fn minimize_pointed_at(eq: &WeierstrassEq, prime: &PrimeIdeal) -> Result<LocalModelData> {
    if !eq.has_pointed_shape() {
        return Err(Error::Precondition("pointed minimization needs a pointed equation".into()));
    }
    let eq = eq.with_pointed(true)?;
    let g = eq.genus() as i64;
    let w = 2 * g + 1;
    let field = eq.field();
    let pi = prime.uniformizer();
    eq.discriminant()?;

    // Weighted denominators: x has weight 2, y weight 2g+1.
    let mut m = 0i64;
    for (j, c) in eq.q().coeffs().iter().enumerate() {
        let v = prime.valuation(c);
        let wt = w - 2 * j as i64;
        if v < 0 {
            m = m.max((-v + wt - 1) / wt);
        }
    }
    for (i, c) in eq.p().coeffs().iter().enumerate() {
        let v = prime.valuation(c);
        let wt = 2 * w - 2 * i as i64;
        if v < 0 && wt > 0 {
            m = m.max((-v + wt - 1) / wt);
        }
    }
    let mut change = LocalChange {
        a: pi.pow(-2 * m),
        r: KElement::zero(field),
        b: pi.pow(-w * m),
        h: Poly::zero(field),
    };
    let mut cur = change.apply(&eq);
    let small_prime = {
        let p = prime.p();
        (BigInt::from(2 * w) % p).is_zero()
    };
    let k = prime.residue_field();
    loop {
        let vd = prime.valuation(&cur.discriminant()?);
        if vd < 4 * g * w {
            break;
        }
        let candidates: Vec<KElement> = if small_prime {
            let mut out = Vec::new();
            for s0 in k.elements() {
                for s1 in k.elements() {
                    out.push(&prime.lift(&s0) + &(&pi * &prime.lift(&s1)));
                }
            }
            out
        } else {
            let f = cur.f_poly();
            let c = f.coeff(2 * g as usize);
            vec![-(&c / &KElement::from_int(field, 4 * w))]
        };
        let mut found = None;
        for r in candidates {
            let xmove = LocalChange {
                a: &pi * &pi,
                r,
                b: KElement::one(field),
                h: Poly::zero(field),
            };
            let yn = normalize_y(&xmove.apply(&cur), prime)?;
            if yn.k == w {
                let ystep = LocalChange {
                    a: KElement::one(field),
                    r: KElement::zero(field),
                    b: yn.b,
                    h: yn.h,
                };
                found = Some((xmove.then(&ystep), yn.eq));
                break;
            }
        }
        match found {
            Some((stepc, next)) => {
                change = change.then(&stepc);
                cur = next;
            }
            None => break,
        }
    }
    LocalModelData::new(&eq, prime, change)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{primes_above, FieldSpec};

    const Q: FieldSpec = FieldSpec::Rational;

    fn prime(p: i64) -> PrimeIdeal {
        primes_above(Q, &BigInt::from(p))[0].clone()
    }

    fn pointed(p: &[i64]) -> WeierstrassEq {
        WeierstrassEq::new_pointed(Q, (p.len() - 2) / 2, Poly::from_ints(Q, p), Poly::zero(Q)).unwrap()
    }

    #[test]
    fn pointed_examples() {
        let e = pointed(&[59049, 0, 0, 0, 0, 1]);
        let lm = minimize_pointed_at(&e, &prime(3)).unwrap();
        assert_eq!(lm.v_delta, 0);
        assert_eq!(lm.equation.p(), &Poly::from_ints(Q, &[1, 0, 0, 0, 0, 1]));
        let e = pointed(&[15625, 625, 0, 1]);
        let lm = minimize_pointed_at(&e, &prime(5)).unwrap();
        assert_eq!(lm.equation.p(), &Poly::from_ints(Q, &[1, 1, 0, 1]));
        let e = pointed(&[1, 0, 0, 0, 0, 1]);
        let lm = minimize_pointed_at(&e, &prime(3)).unwrap();
        assert_eq!(lm.change, LocalChange::identity(Q));
    }

    #[test]
    fn elliptic_example_at_5() {
        let e = WeierstrassEq::from_ints(Q, 1, &[15625, 625, 0, 1], &[]).unwrap();
        let lm = minimize_at(&e, &prime(5)).unwrap();
        let v_in = prime(5).valuation(&e.discriminant().unwrap());
        assert_eq!(v_in - lm.v_delta, 12);
        assert_eq!(lm.equation.p(), &Poly::from_ints(Q, &[1, 1, 0, 1]));
    }

    #[test]
    fn search_recovers_good_reduction() {
        let e = WeierstrassEq::from_ints(Q, 2, &[1, 0, 0, 0, 0, 1], &[]).unwrap();
        let scramble = LocalChange {
            a: KElement::from_int(Q, 9),
            r: KElement::from_int(Q, 4),
            b: KElement::from_rat(Q, crate::rat::Rat::new(1.into(), 27.into())),
            h: Poly::zero(Q),
        };
        let e2 = scramble.apply(&e);
        let lm = minimize_at(&e2, &prime(3)).unwrap();
        assert_eq!(lm.v_delta, 0);
        assert_eq!(minimize_at(&lm.equation, &prime(3)).unwrap().change, LocalChange::identity(Q));
    }

    #[test]
    fn search_in_char_2() {
        let e = WeierstrassEq::from_ints(Q, 1, &[0, -1, 0, 1], &[1]).unwrap();
        let scramble = LocalChange {
            a: KElement::from_int(Q, 4),
            r: KElement::from_int(Q, 1),
            b: KElement::from_int(Q, 8),
            h: Poly::from_ints(Q, &[1, 1]),
        };
        let e2 = scramble.apply(&e);
        let lm = minimize_at(&e2, &prime(2)).unwrap();
        assert_eq!(lm.v_delta, 0);
    }
}
