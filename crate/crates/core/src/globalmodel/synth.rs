use crate::error::{Error, Result};
use crate::exactpoly::{Mat2, Poly};
use crate::globalmodel::{assemble_with, bad_primes, AssembleOptions, ModelReport};
use crate::localmin::{model_at_vertex, LocalChange};
use crate::quadfield::crt::idempotent;
use crate::quadfield::{principal_generator, FieldSpec, FractionalIdeal, KElement, PrimeIdeal};
use crate::weier::{EqTransform, WeierstrassEq};

pub const DEFAULT_MOBIUS_BUDGET: usize = 64;

/// A global integral equation and the change of variables reaching it.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub equation: WeierstrassEq,
    /// Input coordinates to output coordinates.
    pub transform: EqTransform,
}

fn is_integral(eq: &WeierstrassEq) -> bool {
    eq.p().coeffs().iter().chain(eq.q().coeffs()).all(|c| c.is_integral())
}

/// X = (x - r)/alpha, Y = (y - h(x))/beta, when generators exist.
fn direct(report: &ModelReport) -> Result<Option<Synthesis>> {
    let g = report.genus();
    let (alpha, beta) = if report.pointed {
        let Some(mu) = report.ideal_u.as_ref().and_then(principal_generator) else {
            return Ok(None);
        };
        (mu.pow(-2), mu.pow(-(2 * g as i64 + 1)))
    } else {
        match (principal_generator(&report.ideal_a), principal_generator(&report.ideal_b)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(None),
        }
    };
    let change = LocalChange { a: alpha, r: report.r.clone(), b: beta, h: report.h.clone() };
    let out = change.apply(&report.input);
    if !is_integral(&out) {
        return Err(Error::Precondition("glued equation is not integral".into()));
    }
    let out = if report.pointed { out.with_pointed(true)? } else { out };
    Ok(Some(Synthesis { equation: out, transform: change.to_transform(g) }))
}

/// A change of x making [a] trivial, when [a] = [c]^2 is not.
///
/// The x-line is P(L) with L = a e1 + O (r e1 + e2); c^{-1} L is free.
fn steinitz_fix(report: &ModelReport) -> Result<Option<EqTransform>> {
    let cg = report.class_group();
    if report.class_a == cg.identity() {
        return Ok(None);
    }
    let Some(root) = cg.forms().iter().find(|f| cg.compose(f, f) == report.class_a).cloned() else {
        return Err(Error::ObstructionNonSquareBundle);
    };
    let field = report.field();
    let c = cg.ideal_of(&root);
    let i1 = report.ideal_a.div(&c);
    let i2 = c.inv();
    let gamma = principal_generator(&i1.mul(&i2)).expect("class chosen to be trivial");
    let a = i1.basis()[0].clone();
    let n = FractionalIdeal::principal(&a)?.div(&i1);
    let (b, t) = coprime_partner(field, &i2, &n)?;
    let s = &KElement::one(field) - &t;
    let alpha = &s / &a;
    let beta = &t / &b;
    let r = &report.r;
    // u1 = a w1 + b w2 and gamma (-beta w1 + alpha w2), with w1 = (1, 0), w2 = (r, 1).
    let m = Mat2::new(
        &a + &(&b * r),
        &gamma * &(&(&alpha * r) - &beta),
        b,
        &gamma * &alpha,
    );
    let t = EqTransform::new(report.genus(), m, KElement::one(field), Poly::zero(field))?;
    Ok(Some(t.inverse()))
}

/// b in i2 with b i2^{-1} + n = O, and t in b i2^{-1} with 1 - t in n.
fn coprime_partner(
    field: FieldSpec,
    i2: &FractionalIdeal,
    n: &FractionalIdeal,
) -> Result<(KElement, KElement)> {
    let basis = i2.basis();
    let i2inv = i2.inv();
    for bound in 1..=12i64 {
        for x in -bound..=bound {
            for y in -bound..=bound {
                if x.abs().max(y.abs()) != bound {
                    continue;
                }
                let b = &basis[0].scale(&crate::rat::int(x)) + &basis[1].scale(&crate::rat::int(y));
                if b.is_zero() {
                    continue;
                }
                let m = FractionalIdeal::principal(&b)?.mul(&i2inv);
                let mut gens = m.basis();
                gens.extend(n.basis());
                if FractionalIdeal::from_generators(field, &gens)?.is_unit() {
                    let t = idempotent(field, n, &m)?;
                    return Ok((b, t));
                }
            }
        }
    }
    Err(Error::NotFound)
}

/// u = 1/(x - c).
fn moebius(genus: usize, c: &KElement) -> EqTransform {
    let field = c.field();
    let m = Mat2::new(KElement::zero(field), KElement::one(field), KElement::one(field), -c.clone());
    EqTransform::new(genus, m, KElement::one(field), Poly::zero(field)).expect("invertible")
}

/// Small algebraic integers, by growing box size.
fn small_integers(field: FieldSpec, count: usize) -> Vec<KElement> {
    let mut out = Vec::with_capacity(count);
    let mut n = 0i64;
    while out.len() < count {
        for x in -n..=n {
            let ys: Vec<i64> = if field.is_rational() { vec![0] } else { (-n..=n).collect() };
            for y in ys {
                if x.abs().max(y.abs()) == n {
                    out.push(KElement::from_ints(field, x, y));
                }
            }
        }
        n += 1;
    }
    out.truncate(count);
    out
}

/// Options for `synthesize` and `analyze`.
#[derive(Debug, Clone)]
pub struct SynthOptions {
    pub assemble: AssembleOptions,
    pub mobius_budget: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions { assemble: AssembleOptions::default(), mobius_budget: DEFAULT_MOBIUS_BUDGET }
    }
}

type Vertex = (PrimeIdeal, KElement, KElement);

/// The x-vertex (prime, a, r) of each local model.
fn vertices(report: &ModelReport) -> Vec<Vertex> {
    report
        .local
        .iter()
        .map(|l| (l.prime.clone(), l.change.a.clone(), l.change.r.clone()))
        .collect()
}

/// Where the vertices go under u = 1/(x - c).
fn moebius_vertices(verts: &[Vertex], c: &KElement) -> Vec<Vertex> {
    verts
        .iter()
        .map(|(p, a, r)| {
            let field = a.field().join(c.field());
            let pi = p.uniformizer();
            let n = p.valuation(a);
            let d = r - c;
            if d.is_zero() || p.valuation(&d) >= n {
                (p.clone(), pi.pow(-n), KElement::zero(field))
            } else {
                let t = p.valuation(&d);
                (p.clone(), pi.pow(n - 2 * t), d.inv().unwrap())
            }
        })
        .collect()
}

/// Assemble `eq` with the given local x-vertices; other primes use the standard vertex.
fn reassemble(eq: &WeierstrassEq, verts: &[Vertex], node_cap: usize) -> Result<ModelReport> {
    let field = eq.field();
    let mut primes = bad_primes(eq)?;
    for (p, _, _) in verts {
        if !primes.contains(p) {
            primes.push(p.clone());
        }
    }
    let one = KElement::one(field);
    let zero = KElement::zero(field);
    let mut overrides = Vec::with_capacity(primes.len());
    for p in primes {
        let (a, r) = match verts.iter().find(|(q, _, _)| *q == p) {
            Some((_, a, r)) => (a.clone(), r.clone()),
            None => (one.clone(), zero.clone()),
        };
        let lm = model_at_vertex(eq, &p, &a, &r)?;
        overrides.push((p, lm.change));
    }
    assemble_with(eq, &AssembleOptions { pointed: false, node_cap, overrides })
}

/// A global integral equation for the model described by `report`.
///
/// Coordinate changes carry the local models along, so the output defines
/// the same model as the report even when that model is not minimal.
pub fn synthesize(report: &ModelReport, opts: &SynthOptions) -> Result<Synthesis> {
    let v = &report.verdicts;
    if !v.z_is_p1 {
        return Err(Error::ObstructionNonSquareBundle);
    }
    if !v.w_trivial {
        return Err(Error::ObstructionWClass);
    }
    if let Some(s) = direct(report)? {
        return Ok(s);
    }
    let g = report.genus();
    let field = report.field();
    let cap = opts.assemble.node_cap;
    let base = vertices(report);

    let mut moves: Vec<Option<KElement>> = vec![None];
    moves.extend(small_integers(field, opts.mobius_budget).into_iter().map(Some));
    for mv in moves {
        let (mut t, mut rep) = match mv {
            None => (EqTransform::identity(g, field), reassemble(&report.input, &base, cap)?),
            Some(c) => {
                let t = moebius(g, &c);
                let e = t.apply(&report.input)?;
                let verts = moebius_vertices(&base, &c);
                (t, reassemble(&e, &verts, cap)?)
            }
        };
        for _ in 0..2 {
            if let Some(s) = direct(&rep)? {
                return Ok(Synthesis { equation: s.equation, transform: s.transform.compose(&t) });
            }
            match steinitz_fix(&rep)? {
                Some(fix) => {
                    // The new coordinate is standard at every prime.
                    let e = fix.apply(&rep.input)?;
                    rep = reassemble(&e, &[], cap)?;
                    t = fix.compose(&t);
                }
                None => break,
            }
        }
    }
    Err(Error::SearchBudgetExceeded(opts.mobius_budget))
}

/// assemble, then synthesize when possible; synthesis failures are recorded in the report.
pub fn analyze(eq: &WeierstrassEq, opts: &SynthOptions) -> Result<ModelReport> {
    let mut report = assemble_with(eq, &opts.assemble)?;
    match synthesize(&report, opts) {
        Ok(s) => report.synthesized = Some(s.equation),
        Err(e) => report.synthesis_error = Some(e),
    }
    Ok(report)
}

/// Good reduction everywhere and class number prime to 2(2g+1).
pub fn unit_discriminant_check(eq: &WeierstrassEq) -> Result<bool> {
    let report = assemble_with(eq, &AssembleOptions::default())?;
    Ok(report.verdicts.unit_discriminant)
}
