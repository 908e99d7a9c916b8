//! Named verification suites: exhaustive or sampled sweeps over finite
//! windows, each producing a [`SuiteReport`].
//!
//! Parameters are JSON objects; every field has a default and unknown
//! fields are rejected. The report echoes the effective parameters so that
//! a failing run can be reproduced from its own output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cocycles::{check_cocycle_laws, CocycleSpec};
use crate::duality::{chi_char, contraction_time, dual_action_e, dual_action_t, pairing, pairing_matrix_rank, stabilizer_is_trivial};
use crate::error::{Error, Result};
use crate::extensions::{derived_witness, ext_alpha, ext_commutator, ext_inv, ext_mul, ExtElem};
use crate::heisenberg::{
    heis_char, heis_dual_action, heis_inv, heis_mul, orbit_description, orbit_membership, HeisElem, Membership, NPoint,
    OrbitKind, DIVISION_STEPS,
};
use crate::laurent::{lau_shift, LaurentElem, Valuation};
use crate::multipliers::{
    check_multiplier_axioms, check_omega2_laws, in_s_omega, mackey_identity_check, omega2, omega2_closed_form,
    s_omega_window, s_omega_witness, type_i_verdict, MultiplierSpec, Verdict,
};
use crate::padic::{companion_matrix, contractivity_certificate, dual_companion, psi_char, PadicElem, PolyData};
use crate::report::{Check, LawReport, SuiteReport};
use crate::scalars::{Modulus, TorusElem};
use crate::sweep;
use crate::window::{Window, WindowSpace};

pub const SUITES: &[&str] = &[
    "duality-iso",
    "transpose-lemma",
    "dual-action",
    "cocycle-laws",
    "extension-group",
    "commutator-formula",
    "multiplier-axioms",
    "omega2-dual-path",
    "mackey-identity",
    "s-omega-prop57",
    "verdict-thm56",
    "heisenberg",
];

/// Runs the suite `name` with `params` (`null` selects the defaults).
pub fn run_suite(name: &str, params: &Value) -> Result<SuiteReport> {
    match name {
        "duality-iso" => run(name, params, duality_iso),
        "transpose-lemma" => run(name, params, transpose_lemma),
        "dual-action" => run(name, params, dual_action),
        "cocycle-laws" => run(name, params, cocycle_laws),
        "extension-group" => run(name, params, extension_group),
        "commutator-formula" => run(name, params, commutator_formula),
        "multiplier-axioms" => run(name, params, multiplier_axioms),
        "omega2-dual-path" => run(name, params, omega2_dual_path),
        "mackey-identity" => run(name, params, mackey_identity),
        "s-omega-prop57" => run(name, params, |p: SOmegaParams| s_omega_suite(p.normalized())),
        "verdict-thm56" => run(name, params, |p: VerdictParams| verdict_suite(p.normalized())),
        "heisenberg" => run(name, params, heisenberg),
        _ => Err(Error::UnknownSuite(name.to_string())),
    }
}

fn run<P, F>(name: &str, params: &Value, body: F) -> Result<SuiteReport>
where
    P: DeserializeOwned + Serialize + Default + Clone,
    F: FnOnce(P) -> Result<(P, LawReport)>,
{
    let parsed: P = if params.is_null() {
        P::default()
    } else {
        serde_json::from_value(params.clone()).map_err(|e| Error::InvalidParams(e.to_string()))?
    };
    let (effective, report) = body(parsed)?;
    let echo = serde_json::to_value(&effective).expect("params serialize");
    Ok(SuiteReport::new(name, echo, report))
}

fn text(x: &LaurentElem) -> Value {
    Value::String(x.to_string())
}

fn field(p: u64, n: u32) -> Result<Modulus> {
    Modulus::new(p, n).map_err(|e| Error::InvalidParams(e.to_string()))
}

/// All subsets of {1, …, m} in binary order, including ∅.
fn subsets(m: u32) -> Vec<Vec<u32>> {
    (0u32..1 << m)
        .map(|mask| (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

fn tag(label: impl std::fmt::Display, mut report: LawReport) -> LawReport {
    for c in &mut report.checks {
        c.name = format!("{label}: {}", c.name);
    }
    report
}

// ---------------------------------------------------------------- duality

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DualityIsoParams {
    /// Pairs (p, n) of the coefficient ring ℤ/pⁿ.
    pub rings: Vec<(u64, u32)>,
    /// Characters indexed by W(−l, l), evaluated on the mirror W(−l+1, l+1).
    pub l: i64,
    /// Largest |W|³ swept triple by triple; above it additivity is checked
    /// against the monomial generators only.
    pub max_triples: u64,
}

impl Default for DualityIsoParams {
    fn default() -> Self {
        DualityIsoParams {
            rings: vec![(2, 1), (2, 2), (3, 1), (3, 2)],
            l: 2,
            max_triples: 1 << 25,
        }
    }
}

fn duality_iso(params: DualityIsoParams) -> Result<(DualityIsoParams, LawReport)> {
    if params.l < 1 {
        return Err(Error::InvalidParams("l must be at least 1".into()));
    }
    if params.l > 4 {
        return Err(Error::InvalidParams("l is limited to 4".into()));
    }
    let mut report = LawReport::default();
    for &(p, n) in &params.rings {
        let m = field(p, n)?;
        if m.order() > 256 {
            return Err(Error::InvalidParams(format!("ring of order {} is too large", m.order())));
        }
        let ys = WindowSpace::new(m, Window::new(-params.l, params.l))?;
        let xs = WindowSpace::new(m, Window::new(-params.l + 1, params.l + 1))?;
        let (ny, nx) = (ys.len(), xs.len());
        let yv = ys.elements();
        let xv = xs.elements();
        let rows = sweep::map(ny, |i| {
            xv.iter()
                .map(|x| pairing(&yv[i], x).expect("same ring") as u8)
                .collect::<Vec<u8>>()
        });
        let q = m.order() as u16;
        let label = format!("Z/{p}^{n}");
        let exhaustive = (ny as u64).saturating_pow(3) <= params.max_triples;
        let (y_parts, x_parts): (Vec<usize>, Vec<usize>) = if exhaustive {
            ((0..ny).collect(), (0..nx).collect())
        } else {
            (ys.generators(), xs.generators())
        };
        let sums_ok = |lhs: &[u8], a: &[u8], b: &[u8]| {
            lhs.iter().zip(a).zip(b).position(|((&s, &u), &v)| (u as u16 + v as u16) % q != s as u16)
        };

        let cases = (ny * y_parts.len() * nx) as u64;
        let bad = sweep::find_first(ny * y_parts.len(), |idx| {
            let (i, g) = (idx / y_parts.len(), y_parts[idx % y_parts.len()]);
            sums_ok(&rows[ys.add_index(i, g)], &rows[i], &rows[g])
                .map(|j| json!({"y": text(&yv[i]), "y2": text(&yv[g]), "x": text(&xv[j])}))
        });
        let scope = if exhaustive { "all pairs" } else { "generators" };
        report.push(Check::new(format!("{label}: chi_(y+y2) = chi_y chi_y2 ({scope})"), cases, bad));

        // x ↦ x + g as an index map, one per summand g
        let shifts: Vec<Vec<usize>> = x_parts.iter().map(|&g| (0..nx).map(|j| xs.add_index(j, g)).collect()).collect();
        let cases = (ny * nx * x_parts.len()) as u64;
        let bad = sweep::find_first(ny * x_parts.len(), |idx| {
            let (i, k) = (idx / x_parts.len(), idx % x_parts.len());
            let (row, g) = (&rows[i], x_parts[k]);
            let rg = row[g] as u16;
            shifts[k]
                .iter()
                .enumerate()
                .position(|(j, &jg)| row[jg] as u16 != (row[j] as u16 + rg) % q)
                .map(|j| json!({"y": text(&yv[i]), "x": text(&xv[j]), "x2": text(&xv[g])}))
        });
        report.push(Check::new(format!("{label}: chi_y is a character ({scope})"), cases, bad));

        let bad = sweep::find_first(ny, |i| {
            (i != 0 && rows[i].iter().all(|&c| c == 0)).then(|| json!({"y": text(&yv[i])}))
        });
        report.push(Check::new(format!("{label}: y -> chi_y is injective"), ny as u64, bad));

        let rank = pairing_matrix_rank(m, params.l)?;
        let full = 2 * params.l as usize;
        report.push(Check::single(format!("{label}: pairing matrix has full rank"), rank == full, || {
            json!({"rank": rank, "expected": full})
        }));
    }
    Ok((params, report))
}

// -------------------------------------------------------- transpose lemma

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransposeParams {
    pub primes: Vec<u64>,
    /// Polynomials as coefficient lists a₀, …, a_{m−1} in multiples of p.
    pub polys: Vec<Vec<i64>>,
    pub max_power: u32,
}

impl Default for TransposeParams {
    fn default() -> Self {
        TransposeParams {
            primes: vec![2, 3, 5],
            // X − p, X² − p, X² + pX + p
            polys: vec![vec![-1], vec![-1, 0], vec![1, 1]],
            max_power: 20,
        }
    }
}

fn padic_vectors(p: u64, m: usize) -> Result<Vec<Vec<PadicElem>>> {
    let prec = crate::padic::DEFAULT_PRECISION;
    let mut out = Vec::new();
    for i in 0..m {
        let mut e = vec![PadicElem::exact_zero(p); m];
        e[i] = PadicElem::from_int(p, 1, prec)?;
        out.push(e);
    }
    // p⁻¹, p⁻², and mixed digits exercise the fractional parts ψ sees
    let inv_p = PadicElem::from_digits(p, -1, &[1], prec as usize + 1)?;
    let inv_p2 = PadicElem::from_digits(p, -2, &[1, p - 1], prec as usize + 2)?;
    let seven = PadicElem::from_int(p, 7, prec)?;
    let mixed = [inv_p, inv_p2, seven];
    out.push((0..m).map(|i| mixed[i % 3].clone()).collect());
    out.push((0..m).map(|i| mixed[(i + 1) % 3].clone()).collect());
    Ok(out)
}

fn psi_dot(y: &[PadicElem], x: &[PadicElem]) -> Result<TorusElem> {
    let mut acc = TorusElem::identity(y[0].p());
    for (a, b) in y.iter().zip(x) {
        acc = acc * psi_char(a, b)?;
    }
    Ok(acc)
}

fn same_value(a: &PadicElem, b: &PadicElem) -> bool {
    a.sub(b).map(|d| d.is_indistinguishable_from_zero()).unwrap_or(false)
}

fn transpose_lemma(params: TransposeParams) -> Result<(TransposeParams, LawReport)> {
    let mut report = LawReport::default();
    for &p in &params.primes {
        for shape in &params.polys {
            let ints: Vec<i128> = shape.iter().map(|&c| c as i128 * p as i128).collect();
            let g = PolyData::from_ints(p, &ints)?;
            let m = g.degree();
            let label = format!("p={p} a={ints:?}");
            let c = companion_matrix(&g);
            let ct = dual_companion(&g);

            let entry_ok = (0..m).all(|i| (0..m).all(|j| ct.get(i, j) == c.get(j, i)));
            report.push(Check::new(format!("{label}: dual matrix is the transpose"), (m * m) as u64, (!entry_ok).then(|| json!({"poly": g}))));

            // ψ(⟨α̂y, x⟩) = ψ(⟨y, αx⟩) is what makes α̂ the dual of α
            let vecs = padic_vectors(p, m)?;
            let mut bad = None;
            for y in &vecs {
                for x in &vecs {
                    let lhs = psi_dot(&dual_action_e(1, y, &g)?, x)?;
                    let rhs = psi_dot(y, &c.mul_vec(x)?)?;
                    if lhs != rhs && bad.is_none() {
                        bad = Some(json!({"y": y, "x": x, "lhs": lhs.to_string(), "rhs": rhs.to_string()}));
                    }
                }
            }
            report.push(Check::new(format!("{label}: psi(<dual y, x>) = psi(<y, alpha x>)"), (vecs.len() * vecs.len()) as u64, bad));

            let mut bad = None;
            for y in &vecs {
                let got = dual_action_e(1, y, &g)?;
                let mut want: Vec<PadicElem> = y[1..].to_vec();
                let mut last = PadicElem::exact_zero(p);
                for (a, yi) in g.coeffs().iter().zip(y) {
                    last = last.sub(&a.mul(yi)?)?;
                }
                want.push(last);
                if !got.iter().zip(&want).all(|(a, b)| same_value(a, b)) && bad.is_none() {
                    bad = Some(json!({"y": y, "got": got, "want": want}));
                }
            }
            report.push(Check::new(format!("{label}: coordinate formula for the dual action"), vecs.len() as u64, bad));

            let cert = contractivity_certificate(&g)?;
            report.push(Check::single(format!("{label}: contractivity certificate"), cert, || json!({"poly": g})));

            let mut bad = None;
            for (name, mat) in [("companion", &c), ("transpose", &ct)] {
                for e in &vecs[..m] {
                    let mut v = e.clone();
                    for k in 1..=params.max_power as i64 {
                        v = mat.mul_vec(&v)?;
                        let floor = k / m as i64;
                        let low = v.iter().map(PadicElem::valuation_lower_bound).min().expect("m >= 1");
                        if low < Valuation::Finite(floor) && bad.is_none() {
                            bad = Some(json!({"matrix": name, "k": k, "vector": v, "bound": floor}));
                        }
                    }
                }
            }
            report.push(Check::new(
                format!("{label}: iterates contract, v(C^k e_i) >= floor(k/m)"),
                2 * m as u64 * params.max_power as u64,
                bad,
            ));
        }
    }
    Ok((params, report))
}

// ------------------------------------------------------------ dual action

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DualActionParams {
    pub primes: Vec<u64>,
    pub window: Window,
    pub max_shift: i64,
    pub samples: u32,
    pub seed: u64,
    pub depth: u32,
}

impl Default for DualActionParams {
    fn default() -> Self {
        DualActionParams {
            primes: vec![2, 3],
            window: Window::new(-2, 2),
            max_shift: 3,
            samples: 200,
            seed: 0x5eed,
            depth: 16,
        }
    }
}

/// Least n with χ_{t^n y} trivial on every monomial t^j, j ∈ [k, k + span).
fn contraction_time_brute(y: &LaurentElem, k: i64, span: i64, limit: u64) -> Option<u64> {
    let m = y.modulus();
    (0..=limit).find(|&n| {
        let shifted = dual_action_t(n as i64, y);
        (k..k + span).all(|j| chi_char(&shifted, &LaurentElem::monomial(m, 1, j)).map(|t| t.is_identity()).unwrap_or(false))
    })
}

fn dual_action(params: DualActionParams) -> Result<(DualActionParams, LawReport)> {
    let mut report = LawReport::default();
    let shifts: Vec<i64> = (-params.max_shift..=params.max_shift).collect();
    for &p in &params.primes {
        let m = field(p, 1)?;
        let sp = WindowSpace::new(m, params.window)?;
        let e = sp.elements();
        let n = e.len();
        let cases = n * n * shifts.len();
        let bad = sweep::find_first(cases, |idx| {
            let (i, j, s) = (idx / (n * shifts.len()), (idx / shifts.len()) % n, idx % shifts.len());
            let k = shifts[s];
            let lhs = chi_char(&dual_action_t(k, &e[i]), &e[j]).ok()?;
            let rhs = chi_char(&e[i], &lau_shift(&e[j], k)).ok()?;
            (lhs != rhs).then(|| json!({"y": text(&e[i]), "x": text(&e[j]), "k": k}))
        });
        report.push(Check::new(format!("p={p}: chi_(dual(k,y))(x) = chi_y(t^k x)"), cases as u64, bad));

        let bad = sweep::find_first(n * shifts.len(), |idx| {
            let (i, k) = (idx / shifts.len(), shifts[idx % shifts.len()]);
            let want = match e[i].valuation() {
                Valuation::Finite(v) => Valuation::Finite(v + k),
                Valuation::Infinity => Valuation::Infinity,
            };
            (dual_action_t(k, &e[i]).valuation() != want).then(|| json!({"y": text(&e[i]), "k": k}))
        });
        report.push(Check::new(format!("p={p}: dual action shifts the valuation"), (n * shifts.len()) as u64, bad));

        let bad = sweep::find_first(n, |i| {
            (i != 0 && !stabilizer_is_trivial(&e[i], params.depth).unwrap_or(false)).then(|| json!({"y": text(&e[i])}))
        });
        report.push(Check::new(format!("p={p}: nonzero characters have trivial stabilizer"), n as u64, bad));
    }

    // the sampled pairs are drawn up front so the sweep order cannot matter
    if params.primes.is_empty() {
        return Ok((params, report));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut samples = Vec::with_capacity(params.samples as usize);
    for _ in 0..params.samples {
        let p = params.primes[rng.random_range(0..params.primes.len())];
        let m = field(p, 1)?;
        let mut terms: Vec<(i64, i128)> = (-5..5).map(|j| (j, rng.random_range(0..p) as i128)).collect();
        if terms.iter().all(|&(_, c)| c == 0) {
            let at = rng.random_range(0..terms.len());
            terms[at].1 = 1;
        }
        let mut y = LaurentElem::from_terms(m, terms);
        if rng.random_range(0..4) == 0 {
            y = y.add(&LaurentElem::geometric_tail(m, rng.random_range(-3..8)))?;
        }
        if y.is_zero() {
            y = LaurentElem::monomial(m, 1, 0);
        }
        samples.push((y, rng.random_range(-6..=6i64)));
    }
    let bad = sweep::find_first(samples.len(), |i| {
        let (y, k) = &samples[i];
        let closed = contraction_time(y, *k).ok();
        let brute = contraction_time_brute(y, *k, 64, 64);
        (closed != brute).then(|| json!({"y": text(y), "k": k, "closed": closed, "brute": brute}))
    });
    report.push(Check::new("contraction_time matches brute force", samples.len() as u64, bad));
    Ok((params, report))
}

// ---------------------------------------------------------- cocycle laws

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CocycleLawsParams {
    pub primes: Vec<u64>,
    /// Every S ⊆ {1, …, max_support} is checked.
    pub max_support: u32,
    pub window: Window,
}

impl Default for CocycleLawsParams {
    fn default() -> Self {
        CocycleLawsParams {
            primes: vec![2, 3],
            max_support: 4,
            window: Window::new(-1, 3),
        }
    }
}

fn cocycle_laws(params: CocycleLawsParams) -> Result<(CocycleLawsParams, LawReport)> {
    let mut report = LawReport::default();
    for &p in &params.primes {
        for s in subsets(params.max_support) {
            let spec = CocycleSpec::new(p, s.clone()).map_err(|e| Error::InvalidParams(e.to_string()))?;
            report.extend(tag(format!("p={p} S={s:?}"), check_cocycle_laws(&spec, params.window)?));
        }
    }
    Ok((params, report))
}

// -------------------------------------------------------- extension group

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExtensionParams {
    pub cocycle: CocycleSpec,
    /// Both coordinates range over this window for the group axioms.
    pub window: Window,
    /// Quotient coordinates of the pairs used for the automorphism checks.
    pub alpha_window: Window,
    pub max_shift: i64,
}

impl Default for ExtensionParams {
    fn default() -> Self {
        ExtensionParams {
            cocycle: CocycleSpec::new(2, vec![1]).expect("valid"),
            window: Window::new(-1, 2),
            alpha_window: Window::new(-1, 2),
            max_shift: 3,
        }
    }
}

fn ext_json(g: &ExtElem) -> Value {
    json!({"w": text(g.w()), "x": text(g.x())})
}

fn extension_group(params: ExtensionParams) -> Result<(ExtensionParams, LawReport)> {
    let s = &params.cocycle;
    let sp = WindowSpace::new(s.field(), params.window)?;
    let coords = sp.elements();
    let mut group = Vec::new();
    for w in &coords {
        for x in &coords {
            group.push(ExtElem::new(s.clone(), w.clone(), x.clone())?);
        }
    }
    let n = group.len();
    let id = ExtElem::identity(s.clone());
    let mut report = LawReport::default();

    let bad = sweep::find_first(n * n * n, |idx| {
        let (a, b, c) = (&group[idx / (n * n)], &group[(idx / n) % n], &group[idx % n]);
        let lhs = ext_mul(&ext_mul(a, b).ok()?, c).ok()?;
        let rhs = ext_mul(a, &ext_mul(b, c).ok()?).ok()?;
        (lhs != rhs).then(|| json!({"a": ext_json(a), "b": ext_json(b), "c": ext_json(c)}))
    });
    report.push(Check::new("associative", (n * n * n) as u64, bad));

    let bad = sweep::find_first(n, |i| {
        let g = &group[i];
        let ok = ext_mul(g, &id).ok()? == *g
            && ext_mul(&id, g).ok()? == *g
            && ext_mul(g, &ext_inv(g)).ok()?.is_identity()
            && ext_mul(&ext_inv(g), g).ok()?.is_identity();
        (!ok).then(|| json!({"g": ext_json(g)}))
    });
    report.push(Check::new("identity and inverses", n as u64, bad));

    let bad = sweep::find_first(n * n, |idx| {
        let (g, h) = (&group[idx / n], &group[idx % n]);
        let c = ext_commutator(g, h).ok()?;
        let central = group.iter().all(|k| ext_mul(&c, k).ok() == ext_mul(k, &c).ok());
        (!c.x().is_zero() || !central).then(|| json!({"g": ext_json(g), "h": ext_json(h), "commutator": ext_json(&c)}))
    });
    report.push(Check::new("commutators lie in the centre N", (n * n) as u64, bad));

    let asp = WindowSpace::new(s.field(), params.alpha_window)?;
    let ae = asp.elements();
    let zero = LaurentElem::zero(s.field());
    let lifts: Vec<ExtElem> = ae
        .iter()
        .flat_map(|x| [ExtElem::new(s.clone(), zero.clone(), x.clone()), ExtElem::new(s.clone(), x.clone(), x.clone())])
        .collect::<Result<_>>()?;
    let shifts: Vec<i64> = (-params.max_shift..=params.max_shift).collect();
    let m = lifts.len();
    let cases = m * m * shifts.len();
    let bad = sweep::find_first(cases, |idx| {
        let (a, b, k) = (&lifts[idx / (m * shifts.len())], &lifts[(idx / shifts.len()) % m], shifts[idx % shifts.len()]);
        let lhs = ext_alpha(&ext_mul(a, b).ok()?, k);
        let rhs = ext_mul(&ext_alpha(a, k), &ext_alpha(b, k)).ok()?;
        (lhs != rhs).then(|| json!({"g": ext_json(a), "h": ext_json(b), "k": k}))
    });
    report.push(Check::new("alpha^k is a homomorphism", cases as u64, bad));

    let bad = sweep::find_first(m * shifts.len(), |idx| {
        let (g, k) = (&lifts[idx / shifts.len()], shifts[idx % shifts.len()]);
        let h = ext_alpha(g, k);
        let moved = |a: &LaurentElem, b: &LaurentElem| match (a.valuation(), b.valuation()) {
            (Valuation::Finite(u), Valuation::Finite(v)) => v == u + k,
            (u, v) => u == v,
        };
        (!(moved(g.w(), h.w()) && moved(g.x(), h.x()))).then(|| json!({"g": ext_json(g), "k": k}))
    });
    report.push(Check::new("alpha^k raises valuations by k", (m * shifts.len()) as u64, bad));
    Ok((params, report))
}

// ----------------------------------------------------- commutator formula

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CommutatorParams {
    pub primes: Vec<u64>,
    pub max_support: u32,
    pub n_range: (i64, i64),
    pub max_k: i64,
    pub j_range: (i64, i64),
}

impl Default for CommutatorParams {
    fn default() -> Self {
        CommutatorParams {
            primes: vec![2, 3],
            max_support: 4,
            n_range: (-3, 3),
            max_k: 4,
            j_range: (-5, 5),
        }
    }
}

fn commutator_formula(params: CommutatorParams) -> Result<(CommutatorParams, LawReport)> {
    let mut report = LawReport::default();
    for &p in &params.primes {
        let mut specs = Vec::new();
        for s in subsets(params.max_support) {
            specs.push(CocycleSpec::new(p, s).map_err(|e| Error::InvalidParams(e.to_string()))?);
        }
        let f = field(p, 1)?;
        let zero = LaurentElem::zero(f);
        let ns: Vec<i64> = (params.n_range.0..=params.n_range.1).collect();
        let ks: Vec<i64> = (1..=params.max_k).collect();
        let cases = specs.len() * ns.len() * ks.len();
        let bad = sweep::find_first(cases, |idx| {
            let s = &specs[idx / (ns.len() * ks.len())];
            let n = ns[(idx / ks.len()) % ns.len()];
            let k = ks[idx % ks.len()];
            let g = ExtElem::new(s.clone(), zero.clone(), LaurentElem::monomial(f, 1, n)).ok()?;
            let h = ExtElem::new(s.clone(), zero.clone(), LaurentElem::monomial(f, 1, n + 2 * k)).ok()?;
            let got = ext_commutator(&g, &h).ok()?;
            let w = if s.s(k) { LaurentElem::monomial(f, 1, n + k) } else { zero.clone() };
            let want = ExtElem::new(s.clone(), w, zero.clone()).ok()?;
            (got != want).then(|| json!({"S": s.support(), "n": n, "k": k, "got": ext_json(&got), "want": ext_json(&want)}))
        });
        report.push(Check::new(format!("p={p}: [(0,t^n),(0,t^(n+2k))] = (s(k) t^(n+k), 0)"), cases as u64, bad));

        let nonempty: Vec<&CocycleSpec> = specs.iter().filter(|s| !s.support().is_empty()).collect();
        let js: Vec<i64> = (params.j_range.0..=params.j_range.1).collect();
        let cases = nonempty.len() * js.len();
        let bad = sweep::find_first(cases, |idx| {
            let s = nonempty[idx / js.len()];
            let j = js[idx % js.len()];
            let (g, h) = derived_witness(j, s).ok()?;
            let c = ext_commutator(&g, &h).ok()?;
            let ok = c.x().is_zero() && *c.w() == LaurentElem::monomial(f, 1, j);
            (!ok).then(|| json!({"S": s.support(), "j": j, "commutator": ext_json(&c)}))
        });
        report.push(Check::new(format!("p={p}: derived_witness round trips"), cases as u64, bad));

        let empty = CocycleSpec::new(p, vec![])?;
        let rejected = matches!(derived_witness(0, &empty), Err(Error::EmptySupport));
        report.push(Check::single(format!("p={p}: empty support has no witness"), rejected, || json!({"S": []})));
    }
    Ok((params, report))
}

// -------------------------------------------------------------- multipliers

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MultiplierParams {
    pub instances: Vec<MultiplierSpec>,
    pub window: Window,
}

fn default_instances() -> Vec<MultiplierSpec> {
    let s = |p: u64, sup: &[u32]| CocycleSpec::new(p, sup.to_vec()).expect("valid");
    let f2 = Modulus::prime_field(2).expect("prime");
    vec![
        MultiplierSpec::new(s(2, &[1]), LaurentElem::monomial(f2, 1, -1)).expect("valid"),
        MultiplierSpec::with_geometric_tail(s(2, &[1, 3]), 1),
        MultiplierSpec::with_geometric_tail(s(2, &[2]), 2),
        MultiplierSpec::new(s(2, &[1, 2]), LaurentElem::from_terms(f2, [(-2, 1), (-1, 1), (0, 1)])).expect("valid"),
        MultiplierSpec::with_geometric_tail(s(3, &[1, 2]), 1),
    ]
}

impl Default for MultiplierParams {
    fn default() -> Self {
        MultiplierParams {
            instances: default_instances(),
            window: Window::new(-1, 3),
        }
    }
}

fn spec_label(m: &MultiplierSpec) -> String {
    format!("p={} S={:?} z={}", m.cocycle().p(), m.cocycle().support(), m.z())
}

fn multiplier_axioms(params: MultiplierParams) -> Result<(MultiplierParams, LawReport)> {
    let mut report = LawReport::default();
    for m in &params.instances {
        report.extend(tag(spec_label(m), check_multiplier_axioms(m, params.window)?));
    }
    Ok((params, report))
}

fn omega2_dual_path(params: MultiplierParams) -> Result<(MultiplierParams, LawReport)> {
    let mut report = LawReport::default();
    for m in &params.instances {
        report.extend(tag(spec_label(m), check_omega2_laws(m, params.window)?));
    }
    Ok((params, report))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MackeyParams {
    pub instances: Vec<MultiplierSpec>,
    pub window: Window,
}

impl Default for MackeyParams {
    fn default() -> Self {
        let mut instances: Vec<MultiplierSpec> = default_instances().into_iter().filter(|m| m.cocycle().p() == 2).collect();
        let s = CocycleSpec::new(2, vec![1]).expect("valid");
        instances.push(MultiplierSpec::new(s.clone(), LaurentElem::zero(s.field())).expect("valid"));
        MackeyParams {
            instances,
            window: Window::new(-1, 3),
        }
    }
}

fn mackey_identity(params: MackeyParams) -> Result<(MackeyParams, LawReport)> {
    let mut report = LawReport::default();
    for m in &params.instances {
        report.extend(tag(spec_label(m), mackey_identity_check(m, params.window)?));
    }
    Ok((params, report))
}

// ------------------------------------------------- S_ω and the verdict

/// One multiplier ω_{(s, z₀)} with z₀ = Σ_{j ≥ k₀} t^j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometricConfig {
    pub p: u64,
    pub k0: i64,
    #[serde(rename = "S")]
    pub support: Vec<u32>,
}

impl GeometricConfig {
    fn spec(&self) -> Result<MultiplierSpec> {
        let s = CocycleSpec::new(self.p, self.support.clone()).map_err(|e| Error::InvalidParams(e.to_string()))?;
        Ok(MultiplierSpec::with_geometric_tail(s, self.k0))
    }

    fn label(&self) -> String {
        format!("p={} k0={} S={:?}", self.p, self.k0, self.support)
    }

    fn max_support(&self) -> Result<i64> {
        self.support
            .iter()
            .max()
            .map(|&m| m as i64)
            .ok_or_else(|| Error::InvalidParams("S must be nonempty".into()))
    }
}

fn default_grid() -> Vec<GeometricConfig> {
    let mut out = Vec::new();
    for p in [2, 3] {
        for k0 in [1, 2] {
            for support in [vec![1], vec![2], vec![1, 2], vec![1, 3]] {
                out.push(GeometricConfig { p, k0, support });
            }
        }
    }
    out
}

/// A single configuration may be given inline as `{p, k0, S}`; otherwise
/// the grid in `configs` is used.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SOmegaParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k0: Option<i64>,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<u32>>,
    pub configs: Vec<GeometricConfig>,
    /// Windows per prime: the brute-force sweep costs |W|·|W_witness|.
    pub windows: Vec<(u64, Window)>,
}

impl Default for SOmegaParams {
    fn default() -> Self {
        SOmegaParams {
            p: None,
            k0: None,
            support: None,
            configs: default_grid(),
            windows: vec![(2, Window::new(-2, 3)), (3, Window::new(-2, 3))],
        }
    }
}

fn inline_config(p: Option<u64>, k0: Option<i64>, support: Option<Vec<u32>>, grid: Vec<GeometricConfig>) -> Vec<GeometricConfig> {
    if p.is_none() && k0.is_none() && support.is_none() {
        return grid;
    }
    vec![GeometricConfig {
        p: p.unwrap_or(2),
        k0: k0.unwrap_or(1),
        support: support.unwrap_or_else(|| vec![1]),
    }]
}

impl SOmegaParams {
    fn normalized(self) -> Self {
        SOmegaParams {
            configs: inline_config(self.p, self.k0, self.support, self.configs),
            p: None,
            k0: None,
            support: None,
            windows: self.windows,
        }
    }

    fn window_for(&self, p: u64) -> Result<Window> {
        self.windows
            .iter()
            .find(|(q, _)| *q == p)
            .map(|&(_, w)| w)
            .ok_or_else(|| Error::InvalidParams(format!("no window given for p = {p}")))
    }
}

fn s_omega_suite(params: SOmegaParams) -> Result<(SOmegaParams, LawReport)> {
    let mut report = LawReport::default();
    for cfg in &params.configs {
        let m = cfg.spec()?;
        let big_m = cfg.max_support()?;
        let window = params.window_for(cfg.p)?;
        let bound = big_m - cfg.k0;
        let label = format!("{}: S_omega = U_{bound}", cfg.label());
        let sp = WindowSpace::new(m.cocycle().field(), window)?;
        let e = sp.elements();
        let expected = |x: &LaurentElem| x.valuation() > Valuation::Finite(bound);

        let bad = sweep::find_first(e.len(), |i| {
            let got = in_s_omega(&m, &e[i]).ok()?;
            (got != expected(&e[i])).then(|| json!({"x": text(&e[i]), "in_s_omega": got}))
        });
        report.push(Check::new(format!("{label} via h_omega"), e.len() as u64, bad));

        let witness_window = Window::new(window.lo - 2 * big_m, window.hi);
        let brute = s_omega_window(&m, window, witness_window)?;
        let mut bad = None;
        let mut members = brute.iter().peekable();
        for x in &e {
            let in_brute = members.peek() == Some(&x);
            if in_brute {
                members.next();
            }
            let exact = in_s_omega(&m, x)?;
            if (in_brute != expected(x) || in_brute != exact) && bad.is_none() {
                bad = Some(json!({"x": text(x), "brute_force": in_brute, "in_s_omega": exact}));
            }
        }
        report.push(Check::new(format!("{label} by brute force, agreeing with h_omega"), e.len() as u64, bad));
    }
    Ok((params, report))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerdictParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k0: Option<i64>,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<u32>>,
    pub configs: Vec<GeometricConfig>,
    pub depth: u32,
    pub min_witnesses: usize,
    /// x ranges over this window for the explicit witness value.
    pub window: Window,
}

impl Default for VerdictParams {
    fn default() -> Self {
        VerdictParams {
            p: None,
            k0: None,
            support: None,
            configs: default_grid(),
            depth: 12,
            min_witnesses: 6,
            window: Window::new(-2, 2),
        }
    }
}

impl VerdictParams {
    fn normalized(self) -> Self {
        VerdictParams {
            configs: inline_config(self.p, self.k0, self.support, self.configs),
            p: None,
            k0: None,
            support: None,
            ..self
        }
    }
}

fn verdict_suite(params: VerdictParams) -> Result<(VerdictParams, LawReport)> {
    let mut report = LawReport::default();
    for cfg in &params.configs {
        let m = cfg.spec()?;
        let big_m = cfg.max_support()?;
        let label = cfg.label();
        let r = type_i_verdict(&m, params.depth)?;
        let ok = r.verdict == Verdict::NotTypeIWitnessed && r.witnesses.len() >= params.min_witnesses && r.k == big_m - cfg.k0;
        report.push(Check::single(format!("{label}: NotTypeI_witnessed at depth {}", params.depth), ok, || {
            json!({"K": r.k, "expected_K": big_m - cfg.k0, "witnesses": r.witnesses.len(), "verdict": r.verdict})
        }));

        // x ∉ S_ω pairs with y = a·t^{ν(x)−2m} to exp(2πi·a·x_ν/p), and the
        // opposite order gives the conjugate
        let f = m.cocycle().field();
        let p = cfg.p;
        let sp = WindowSpace::new(f, params.window)?;
        let e = sp.elements();
        let bound = big_m - cfg.k0;
        let outside: Vec<&LaurentElem> = e.iter().filter(|x| x.valuation() <= Valuation::Finite(bound)).collect();
        let cases = outside.len() * (p as usize - 1);
        let bad = sweep::find_first(cases, |idx| {
            let x = outside[idx / (p as usize - 1)];
            let a = (idx % (p as usize - 1)) as i128 + 1;
            let v = x.valuation().finite()?;
            let y = s_omega_witness(&m, x)?.scale(a);
            let xv = x.coeff_raw(v) as i128;
            let displayed = TorusElem::from_fraction(a * xv, 1, p);
            let yx = omega2(&m, &y, x).ok()?;
            let xy = omega2(&m, x, &y).ok()?;
            let closed = omega2_closed_form(&m, &y, x).ok()?;
            let ok = yx == displayed && xy == displayed.inv() && closed == yx && !yx.is_identity();
            (!ok).then(|| {
                json!({"x": text(x), "y": text(&y), "omega2_yx": yx.to_string(), "omega2_xy": xy.to_string(),
                       "displayed": displayed.to_string()})
            })
        });
        report.push(Check::new(format!("{label}: witness value exp(2 pi i a x_v / p)"), cases as u64, bad));
    }

    let f2 = Modulus::prime_field(2)?;
    let empty = MultiplierSpec::new(CocycleSpec::new(2, vec![])?, LaurentElem::monomial(f2, 1, 0))?;
    let r = type_i_verdict(&empty, params.depth)?;
    report.push(Check::single("empty support is inconclusive", r.verdict == Verdict::Inconclusive, || {
        json!({"verdict": r.verdict})
    }));
    Ok((params, report))
}

// --------------------------------------------------------------- Heisenberg

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeisenbergParams {
    pub p: u64,
    /// Coordinate window for the group axioms (dimension 1).
    pub window: Window,
    /// Primes and window for the pullback identity χ_c(ab) = χ_{ac}(b).
    pub pullback_primes: Vec<u64>,
    pub pullback_window: Window,
    /// Coordinate window for indices, arguments and ξ in the action checks.
    pub action_window: Window,
}

impl Default for HeisenbergParams {
    fn default() -> Self {
        HeisenbergParams {
            p: 2,
            window: Window::new(-1, 1),
            pullback_primes: vec![2, 3],
            pullback_window: Window::new(-1, 2),
            action_window: Window::new(-1, 2),
        }
    }
}

fn heis_json(g: &HeisElem) -> Value {
    serde_json::to_value(g).expect("serializes")
}

fn point_json(x: &NPoint) -> Value {
    json!({"upsilon": text(&x.upsilon[0]), "z": text(&x.z)})
}

fn heisenberg(params: HeisenbergParams) -> Result<(HeisenbergParams, LawReport)> {
    let f = field(params.p, 1)?;
    let mut report = LawReport::default();

    let sp = WindowSpace::new(f, params.window)?;
    let c = sp.elements();
    let mut group = Vec::new();
    for xi in &c {
        for up in &c {
            for z in &c {
                group.push(HeisElem::new(vec![xi.clone()], vec![up.clone()], z.clone())?);
            }
        }
    }
    let n = group.len();
    let id = HeisElem::identity(f, 1);
    let bad = sweep::find_first(n * n * n, |idx| {
        let (a, b, cc) = (&group[idx / (n * n)], &group[(idx / n) % n], &group[idx % n]);
        let lhs = heis_mul(&heis_mul(a, b).ok()?, cc).ok()?;
        let rhs = heis_mul(a, &heis_mul(b, cc).ok()?).ok()?;
        (lhs != rhs).then(|| json!({"a": heis_json(a), "b": heis_json(b), "c": heis_json(cc)}))
    });
    report.push(Check::new(format!("associative on {n} elements"), (n * n * n) as u64, bad));

    let bad = sweep::find_first(n, |i| {
        let g = &group[i];
        let ok = heis_mul(g, &id).ok()? == *g
            && heis_mul(&id, g).ok()? == *g
            && heis_mul(g, &heis_inv(g)).ok()? == id
            && heis_mul(&heis_inv(g), g).ok()? == id;
        (!ok).then(|| json!({"g": heis_json(g)}))
    });
    report.push(Check::new("identity and inverses", n as u64, bad));

    for &p in &params.pullback_primes {
        let m = field(p, 1)?;
        let e = WindowSpace::new(m, params.pullback_window)?.elements();
        let k = e.len();
        let bad = sweep::find_first(k * k * k, |idx| {
            let (a, b, cc) = (&e[idx / (k * k)], &e[(idx / k) % k], &e[idx % k]);
            let lhs = chi_char(cc, &a.mul(b).ok()?).ok()?;
            let rhs = chi_char(&a.mul(cc).ok()?, b).ok()?;
            (lhs != rhs).then(|| json!({"a": text(a), "b": text(b), "c": text(cc)}))
        });
        report.push(Check::new(format!("p={p}: chi_c(ab) = chi_(ac)(b)"), (k * k * k) as u64, bad));
    }

    let ae = WindowSpace::new(f, params.action_window)?.elements();
    let mut points = Vec::new();
    for up in &ae {
        for z in &ae {
            points.push(NPoint::new(vec![up.clone()], z.clone())?);
        }
    }
    let np = points.len();
    let nx = ae.len();
    let zero = LaurentElem::zero(f);

    // χ_{dual(ξ, idx)}(n) = χ_idx(g n g⁻¹) with g = (ξ, 0, 0)
    let cases = nx * np * np;
    let bad = sweep::find_first(cases, |idx| {
        let (xi, i, j) = (&ae[idx / (np * np)], &points[(idx / np) % np], &points[idx % np]);
        let g = HeisElem::new(vec![xi.clone()], vec![zero.clone()], zero.clone()).ok()?;
        let nj = HeisElem::new(vec![zero.clone()], j.upsilon.clone(), j.z.clone()).ok()?;
        let conj = heis_mul(&heis_mul(&g, &nj).ok()?, &heis_inv(&g)).ok()?;
        let lhs = heis_char(&heis_dual_action(std::slice::from_ref(xi), i).ok()?, j).ok()?;
        let rhs = heis_char(i, &conj.n_part()).ok()?;
        (lhs != rhs || !conj.xi()[0].is_zero())
            .then(|| json!({"xi": text(xi), "index": point_json(i), "argument": point_json(j)}))
    });
    report.push(Check::new("dual action agrees with conjugation", cases as u64, bad));

    let bad = sweep::find_first(nx * np, |idx| {
        let (xi, i) = (&ae[idx / np], &points[idx % np]);
        let moved = heis_dual_action(std::slice::from_ref(xi), i).ok()?;
        let member = matches!(
            orbit_membership(&orbit_description(i), &moved, DIVISION_STEPS),
            Ok(Membership::Member { .. })
        );
        (moved.z != i.z || !member).then(|| json!({"xi": text(xi), "index": point_json(i)}))
    });
    report.push(Check::new("action fixes z and stays in the orbit", (nx * np) as u64, bad));

    let bad = sweep::find_first(np, |i| {
        let kind = orbit_description(&points[i]).kind;
        ((kind == OrbitKind::FixedPoint) != points[i].z.is_zero()).then(|| json!({"index": point_json(&points[i])}))
    });
    report.push(Check::new("FixedPoint iff z = 0", np as u64, bad));

    let relation = sweep::map(np * np, |idx| {
        let (a, b) = (&points[idx / np], &points[idx % np]);
        orbit_membership(&orbit_description(a), b, DIVISION_STEPS)
    });
    let mut rel = Vec::with_capacity(np * np);
    for r in relation {
        rel.push(match r? {
            Membership::Member { .. } => Some(true),
            Membership::NonMember => Some(false),
            Membership::UndecidedAtBound => None,
        });
    }
    let member = |a: usize, b: usize| rel[a * np + b];
    let bad = sweep::find_first(np * np * np, |idx| {
        let (a, b, cc) = (idx / (np * np), (idx / np) % np, idx % np);
        let undecided = member(a, b).is_none();
        let reflexive = member(a, a) == Some(true);
        let symmetric = member(a, b) == member(b, a);
        let transitive = !(member(a, b) == Some(true) && member(b, cc) == Some(true)) || member(a, cc) == Some(true);
        let z_separates = points[a].z == points[b].z || member(a, b) == Some(false);
        (undecided || !reflexive || !symmetric || !transitive || !z_separates)
            .then(|| json!({"a": point_json(&points[a]), "b": point_json(&points[b]), "c": point_json(&points[cc])}))
    });
    report.push(Check::new("orbit membership is an equivalence separating z", (np * np * np) as u64, bad));
    Ok((params, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("unknown", &Value::Null), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn unknown_params_are_rejected() {
        let r = run_suite("commutator-formula", &json!({"primez": [2]}));
        assert!(matches!(r, Err(Error::InvalidParams(_))));
    }

    #[test]
    fn commutator_defaults_pass() {
        let r = run_suite("commutator-formula", &Value::Null).unwrap();
        assert!(r.passed, "{}", r.to_json_pretty());
        assert!(r.checks.iter().all(|c| c.counterexample.is_none()));
    }

    #[test]
    fn s_omega_single_config() {
        let r = run_suite("s-omega-prop57", &json!({"p": 2, "k0": 1, "S": [1]})).unwrap();
        assert!(r.passed, "{}", r.to_json_pretty());
        assert_eq!(r.params["configs"], json!([{"p": 2, "k0": 1, "S": [1]}]));
        assert!(r.params.get("p").is_none());
    }

    #[test]
    fn subsets_cover_the_power_set() {
        let s = subsets(3);
        assert_eq!(s.len(), 8);
        assert_eq!(s[0], Vec::<u32>::new());
        assert_eq!(s[7], vec![1, 2, 3]);
    }
}
