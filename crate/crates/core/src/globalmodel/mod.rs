//! Gluing local models into global invariants: the ideals a, b, u, the
//! discriminant ideal, the Weierstrass class and the existence verdicts.

mod synth;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::localmin::{
    minimize_at_with, minimize_pointed_at, LocalChange, LocalModelData, SearchOptions,
    DEFAULT_NODE_CAP,
};
use crate::quadfield::factor::factor;
use crate::quadfield::{
    crt_approximate, primes_above, ClassGroup, FieldSpec, Form, FractionalIdeal, KElement,
    PrimeIdeal, Target,
};
use crate::weier::WeierstrassEq;

pub use synth::{analyze, unit_discriminant_check, synthesize, SynthOptions, Synthesis, DEFAULT_MOBIUS_BUDGET};

/// Which existence criteria hold for a report.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Verdicts {
    pub z_is_p1: bool,
    pub delta_principal: bool,
    pub det_omega_free: bool,
    pub w_trivial: bool,
    pub criterion_1: bool,
    pub criterion_2: bool,
    pub criterion_3: bool,
    pub criterion_4: bool,
    pub unit_discriminant: bool,
    pub exists_integral_eq: bool,
    /// Only for pointed reports: u principal.
    pub exists_pointed_eq: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct ModelReport {
    pub input: WeierstrassEq,
    pub pointed: bool,
    pub local: Vec<LocalModelData>,
    /// Global x - r = a_s x_s and y - h(x) = b_s y_s at every listed prime.
    pub r: KElement,
    pub h: Poly,
    pub ideal_a: FractionalIdeal,
    pub ideal_b: FractionalIdeal,
    pub delta: FractionalIdeal,
    pub ideal_u: Option<FractionalIdeal>,
    pub class_number: usize,
    pub class_structure: Vec<u64>,
    pub class_a: Form,
    pub class_b: Form,
    pub class_w: Form,
    pub class_det_omega: Form,
    pub class_delta: Form,
    pub class_u: Option<Form>,
    pub verdicts: Verdicts,
    pub synthesized: Option<WeierstrassEq>,
    pub synthesis_error: Option<Error>,
}

impl ModelReport {
    pub fn field(&self) -> FieldSpec {
        self.input.field()
    }

    pub fn genus(&self) -> usize {
        self.input.genus()
    }

    pub fn class_group(&self) -> ClassGroup {
        ClassGroup::new(self.field())
    }
}

/// Options for `assemble_with`.
#[derive(Debug, Clone)]
pub struct AssembleOptions {
    pub pointed: bool,
    pub node_cap: usize,
    /// Local models to use instead of the minimal ones.
    pub overrides: Vec<(PrimeIdeal, LocalChange)>,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        AssembleOptions { pointed: false, node_cap: DEFAULT_NODE_CAP, overrides: Vec::new() }
    }
}

/// Primes dividing the discriminant or a coefficient denominator, sorted by norm.
pub fn bad_primes(eq: &WeierstrassEq) -> Result<Vec<PrimeIdeal>> {
    let field = eq.field();
    let n = eq.discriminant()?.norm();
    let mut m: BigInt = n.numer() * n.denom();
    for c in eq.p().coeffs().iter().chain(eq.q().coeffs()) {
        m *= c.denominator();
    }
    let mut out = Vec::new();
    for (p, _) in factor(&m)? {
        out.extend(primes_above(field, &p));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn prime_power_product(field: FieldSpec, parts: impl Iterator<Item = (PrimeIdeal, i64)>) -> FractionalIdeal {
    parts.fold(FractionalIdeal::unit(field), |acc, (p, e)| {
        if e == 0 {
            acc
        } else {
            acc.mul(&p.ideal().pow(e))
        }
    })
}

pub fn assemble(eq: &WeierstrassEq, pointed: bool) -> Result<ModelReport> {
    assemble_with(eq, &AssembleOptions { pointed, ..Default::default() })
}

pub fn assemble_with(eq: &WeierstrassEq, opts: &AssembleOptions) -> Result<ModelReport> {
    eq.validate()?;
    let field = eq.field();
    let g = eq.genus() as i64;
    let input = if opts.pointed { eq.with_pointed(true)? } else { eq.clone() };
    let mut primes = bad_primes(&input)?;
    for (p, _) in &opts.overrides {
        if p.field() != field {
            return Err(Error::Precondition(format!("override prime {p} is not over {field}")));
        }
        if !primes.contains(p) {
            primes.push(p.clone());
        }
    }
    primes.sort();

    let search = SearchOptions { node_cap: opts.node_cap };
    let mut local = Vec::with_capacity(primes.len());
    for p in &primes {
        let lm = match opts.overrides.iter().find(|(q, _)| q == p) {
            Some((_, ch)) => LocalModelData::new(&input, p, ch.clone())?,
            None if opts.pointed => minimize_pointed_at(&input, p)?,
            None => minimize_at_with(&input, p, search)?,
        };
        if opts.pointed && (2 * g + 1) * lm.va != 2 * lm.vb {
            return Err(Error::InconsistentPointedData(format!(
                "a^(2g+1) and b^2 differ at {p}: v(a) = {}, v(b) = {}",
                lm.va, lm.vb
            )));
        }
        local.push(lm);
    }

    let (r, h) = align(&input, &local)?;

    let ideal_a = prime_power_product(field, local.iter().map(|l| (l.prime.clone(), l.va)));
    let ideal_b = prime_power_product(field, local.iter().map(|l| (l.prime.clone(), l.vb)));
    let delta = prime_power_product(field, local.iter().map(|l| (l.prime.clone(), l.v_delta)));
    let ideal_u = opts.pointed.then(|| {
        prime_power_product(field, local.iter().map(|l| (l.prime.clone(), g * l.va - l.vb)))
    });

    let cg = ClassGroup::new(field);
    let class_a = cg.class_of(&ideal_a);
    let class_b = cg.class_of(&ideal_b);
    let class_delta = cg.class_of(&delta);
    let class_w = if g % 2 == 1 {
        cg.compose(&cg.inverse(&class_b), &cg.pow(&class_a, (g + 1) / 2))
    } else {
        cg.compose(&cg.pow(&class_b, -2), &cg.pow(&class_a, g + 1))
    };
    let class_det_omega = cg.compose(&cg.pow(&class_a, -g * (g + 1) / 2), &cg.pow(&class_b, g));
    let class_u = ideal_u.as_ref().map(|u| cg.class_of(u));

    let mut report = ModelReport {
        input,
        pointed: opts.pointed,
        local,
        r,
        h,
        ideal_a,
        ideal_b,
        delta,
        ideal_u,
        class_number: cg.order(),
        class_structure: cg.structure(),
        class_a,
        class_b,
        class_w,
        class_det_omega,
        class_delta,
        class_u,
        verdicts: Verdicts::default(),
        synthesized: None,
        synthesis_error: None,
    };
    report.verdicts = check_conditions(&report);
    Ok(report)
}

/// A single (r, h) matching every local (r_s, h_s) closely enough.
fn align(eq: &WeierstrassEq, local: &[LocalModelData]) -> Result<(KElement, Poly)> {
    let field = eq.field();
    let targets: Vec<Target> = local
        .iter()
        .map(|l| Target { prime: l.prime.clone(), value: l.change.r.clone(), precision: l.va })
        .collect();
    let r = crt_approximate(field, &targets)?;
    // h_s in powers of X = x - r; coefficient i needs precision v(b) - i v(a).
    let shifted: Vec<Poly> = local
        .iter()
        .map(|l| l.change.h.substitute_affine(&KElement::one(field), &r))
        .collect();
    let top = shifted.iter().filter_map(|p| p.degree()).max();
    let mut coeffs = Vec::new();
    if let Some(top) = top {
        for i in 0..=top {
            let ts: Vec<Target> = local
                .iter()
                .zip(&shifted)
                .map(|(l, s)| Target {
                    prime: l.prime.clone(),
                    value: s.coeff(i),
                    precision: l.vb - i as i64 * l.va,
                })
                .collect();
            coeffs.push(crt_approximate(field, &ts)?);
        }
    }
    let h = Poly::new(field, coeffs).substitute_affine(&KElement::one(field), &-r.clone());
    for l in local {
        let glued = LocalChange { a: l.change.a.clone(), r: r.clone(), b: l.change.b.clone(), h: h.clone() };
        let e = glued.apply(eq);
        if !crate::localmin::is_integral_at(&e, &l.prime) {
            return Err(Error::Precondition(format!("glued model is not integral at {}", l.prime)));
        }
    }
    Ok((r, h))
}

/// The Weierstrass class [w].
pub fn weierstrass_class(report: &ModelReport) -> Form {
    report.class_w.clone()
}

/// The pointed Weierstrass class [u], checked against [w].
pub fn pointed_class(report: &ModelReport) -> Result<Option<Form>> {
    let Some(cu) = &report.class_u else {
        return Ok(None);
    };
    let cg = report.class_group();
    let g = report.genus() as i64;
    let expected = if g % 2 == 1 { cg.pow(cu, g) } else { cg.pow(cu, 2 * g) };
    if expected != report.class_w {
        return Err(Error::InconsistentPointedData("[w] is not the expected power of [u]".into()));
    }
    Ok(Some(cu.clone()))
}

pub fn check_conditions(report: &ModelReport) -> Verdicts {
    let cg = report.class_group();
    let id = cg.identity();
    let g = report.genus() as u64;
    let h = report.class_number as u64;
    let z_is_p1 = cg.is_square(&report.class_a);
    let delta_principal = report.class_delta == id;
    let det_omega_free = report.class_det_omega == id;
    let w_trivial = report.class_w == id;
    let both = delta_principal && det_omega_free;
    Verdicts {
        z_is_p1,
        delta_principal,
        det_omega_free,
        w_trivial,
        criterion_1: both && ((g % 2 == 1 && z_is_p1) || g % 4 == 2),
        criterion_2: h % 2 == 1 && both,
        criterion_3: h.gcd(&(2 * (2 * g + 1))).is_one() && delta_principal,
        criterion_4: h.gcd(&(2 * g)).is_one() && det_omega_free,
        unit_discriminant: report.delta.is_unit() && h.gcd(&(2 * (2 * g + 1))).is_one(),
        exists_integral_eq: z_is_p1 && w_trivial,
        exists_pointed_eq: report.class_u.as_ref().map(|u| *u == id),
    }
}

#[cfg(test)]
mod tests;
