use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::bounds::multiples_bounds;
use super::AuditReport;
use crate::codes::{ceil_neg_log2, BitString, Cost, RingReal};
use crate::enumerate::{default_fuel, dovetail, EnumConfig, HaltTable};
use crate::error::{Error, Result};
use crate::kolmogorov::{
    basis_bound, k_classical, k_exact_in, k_quantum, k_ray, shortest_programs, KEstimate,
};
use crate::qpl::{
    assemble, decode_program, run, ConditionSpec, Instruction, MachineSpec, Mode, RunResult,
};
use crate::qstate::{
    basis_state, check_orthonormal, extend_to_basis, fidelity, gram_schmidt, tensor, tensor_power,
    Amp, Gate, PureState, Ray,
};

/// The 9-bit program `REPAUX; HALT`.
pub const CLONING_WITNESS: &str = "111011111";

fn cost(c: Cost) -> Value {
    serde_json::to_value(c).expect("cost serializes")
}

fn state_json(s: &PureState) -> Value {
    json!(s.amps())
}

fn ray_json(r: &Ray) -> Value {
    json!({ "amps": r.amps(), "norm_sq": r.norm_sq().to_literal() })
}

fn estimate_json(e: &KEstimate) -> Value {
    serde_json::to_value(e).expect("estimate serializes")
}

fn rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        q.to_string()
    }
}

/// `2ⁿ(1 − 2^(−d))`.
fn counting_bound(n: usize, d: u64) -> BigRational {
    let total = BigRational::from(BigInt::from(1u8) << n);
    let shrink = BigRational::new(BigInt::from(1u8), BigInt::from(1u8) << d);
    &total - &total * shrink
}

/// The table certifies every value `< len + 1`: all programs of length
/// `≤ len` are present and were run to completion.
fn require_complete(table: &HaltTable, len: i64) -> Result<()> {
    let complete = table.fuel() >= default_fuel(table.max_len(), table.cond());
    if !complete || (table.max_len() as i64) < len {
        return Err(Error::Table(format!(
            "table (max_len {}, fuel {}) cannot certify lengths up to {len}",
            table.max_len(),
            table.fuel()
        )));
    }
    Ok(())
}

fn start(name: &str, table: &HaltTable) -> AuditReport {
    let mut r = AuditReport::new(name);
    r.param("W", table.spec().workspace())
        .param("mode", table.spec().mode().to_string())
        .param("n", table.cond().n)
        .param("max_len", table.max_len())
        .param("fuel", table.fuel())
        .digest(table.digest());
    r
}

/// `R` applied to every nonempty subset of qubits, and `R²` on each qubit.
pub fn rotation_corpus(n: usize) -> Result<Vec<PureState>> {
    let mut out = Vec::new();
    for mask in 1usize..1 << n {
        let mut s = PureState::zeros(n);
        for q in (0..n).filter(|q| mask >> q & 1 == 1) {
            s.apply(Gate::R, &[q])?;
        }
        out.push(s);
    }
    for q in 0..n {
        let mut s = PureState::zeros(n);
        s.apply(Gate::R, &[q])?;
        s.apply(Gate::R, &[q])?;
        out.push(s);
    }
    Ok(out)
}

/// Every target is within `2n + c_U` of zero, where `c_U` is measured from
/// the classical basis states, and every target has a basis state of
/// fidelity at least `2^(−n)`.
pub fn audit_upper_bound(table: &HaltTable, extra: &[PureState]) -> Result<AuditReport> {
    let n = table.output_width();
    let mut r = start("upper-bound", table);
    let mut basis_values = Vec::new();
    let mut max_k = 0u64;
    for x in BitString::all_of_length(n) {
        let e = k_classical(&x, table)?;
        if !e.exact {
            return Err(Error::Table(format!(
                "table up to {} bits does not certify K(|{x}⟩)",
                table.max_len()
            )));
        }
        let v = e.value.finite().expect("certified values are finite");
        max_k = max_k.max(v);
        basis_values.push(json!({ "x": x, "estimate": estimate_json(&e) }));
    }
    let c_u = max_k as i64 - n as i64;
    r.info("c_U = max K(|e_i⟩) − n", c_u);

    let mut corpus: Vec<PureState> = Vec::new();
    let mut seen: HashSet<PureState> = HashSet::new();
    let sources = shortest_programs(table)
        .into_iter()
        .map(|rec| rec.output.clone())
        .chain((0..1usize << n).map(|i| PureState::basis(n, i)))
        .chain(rotation_corpus(n)?)
        .chain(extra.iter().cloned());
    for s in sources {
        if s.qubits() != n {
            return Err(Error::TargetWidth {
                target: s.qubits(),
                table: n,
            });
        }
        if seen.insert(s.clone()) {
            corpus.push(s);
        }
    }
    if corpus.is_empty() {
        return Err(Error::Param("empty corpus".into()));
    }
    let bound = 2 * n as i64 + c_u;
    let floor = RingReal::pow2(-(n as i64));
    let mut worst_k = Cost::Finite(0);
    let mut k_ok = true;
    let mut fid_ok = true;
    let mut worst_fid: Option<RingReal> = None;
    let mut targets = Vec::new();
    for t in &corpus {
        let e = k_quantum(t, table)?;
        k_ok &= e.value.finite().is_some_and(|v| v as i64 <= bound);
        worst_k = worst_k.max(e.value);
        let best_fid = t
            .amps()
            .iter()
            .map(Amp::norm_sq)
            .max()
            .expect("nonempty state");
        fid_ok &= best_fid >= floor;
        if worst_fid.as_ref().is_none_or(|w| best_fid < *w) {
            worst_fid = Some(best_fid.clone());
        }
        targets.push(json!({
            "state": state_json(t),
            "estimate": estimate_json(&e),
            "best_basis_fidelity": best_fid.to_literal(),
        }));
    }
    r.param("targets", corpus.len());
    r.check(
        "K(x) ≤ 2n + c_U for every target",
        bound,
        cost(worst_k),
        k_ok,
    );
    r.check(
        "some basis state has fidelity ≥ 2^(−n)",
        floor.to_literal(),
        worst_fid.map(|f| f.to_literal()).unwrap_or_default(),
        fid_ok,
    );
    r.artifact("basis_values", basis_values);
    r.artifact("targets", targets);
    Ok(r)
}

/// At least `2ⁿ(1 − 2^(−δ)) + 1` of the `n`-bit strings have `K ≥ n − δ`.
pub fn audit_incompressibility_classical(table: &HaltTable, delta: u64) -> Result<AuditReport> {
    let n = table.output_width();
    if delta > n as u64 {
        return Err(Error::Param(format!(
            "delta {delta} exceeds n = {n}: the bound 2ⁿ(1 − 2^(−δ)) + 1 would exceed 2ⁿ"
        )));
    }
    let threshold = n as i64 - delta as i64;
    require_complete(table, threshold - 1)?;
    let mut r = start("incompressibility-classical", table);
    r.param("delta", delta);
    let mut count = 0u64;
    let mut values = BTreeMap::new();
    for x in BitString::all_of_length(n) {
        let e = k_classical(&x, table)?;
        if e.value.finite().is_none_or(|v| v as i64 >= threshold) {
            count += 1;
        }
        values.insert(x.to_string(), cost(e.value));
    }
    let bound = counting_bound(n, delta) + BigRational::from(BigInt::from(1u8));
    r.check(
        format!("#{{x : K(x) ≥ {threshold}}} ≥ 2ⁿ(1 − 2^(−δ)) + 1"),
        rational(&bound),
        count,
        BigRational::from(BigInt::from(count)) >= bound,
    );
    r.artifact("values", json!(values));
    Ok(r)
}

/// An orthonormal basis whose completion part is orthogonal to every
/// state in the table.
#[derive(Debug, Clone)]
pub struct HardBasis {
    /// Orthonormalized table outputs.
    pub span: Vec<Ray>,
    /// Their completion to a full basis.
    pub completion: Vec<Ray>,
}

impl HardBasis {
    pub fn vectors(&self) -> Vec<Ray> {
        self.span.iter().chain(&self.completion).cloned().collect()
    }
}

pub fn construct_hard_basis(table: &HaltTable) -> Result<HardBasis> {
    let n = table.output_width();
    let states: Vec<PureState> = shortest_programs(table)
        .into_iter()
        .map(|r| r.output.clone())
        .collect();
    let span = gram_schmidt(&states)?;
    assert!(
        span.len() <= 1 << n,
        "more independent states than dimensions"
    );
    let full = extend_to_basis(&span, n)?;
    let completion = full[span.len()..].to_vec();
    Ok(HardBasis { span, completion })
}

/// Checks that the completion vectors are exactly orthogonal to every
/// table output.
pub fn audit_hard_basis(table: &HaltTable) -> Result<AuditReport> {
    let hb = construct_hard_basis(table)?;
    let mut r = start("hard-basis", table);
    let mut zero = true;
    let mut checks = 0u64;
    for v in &hb.completion {
        for rec in table.records() {
            zero &= v.fidelity(&rec.output)?.is_zero();
            checks += 1;
        }
    }
    check_orthonormal(&hb.vectors())?;
    r.check("basis is orthonormal", "exact", "exact", true);
    r.check(
        "completion ⟂ every table output",
        "fidelity 0",
        format!("{checks} pairs, all zero = {zero}"),
        zero,
    );
    let infinite = hb
        .completion
        .iter()
        .map(|v| k_ray(v, table).map(|e| e.value == Cost::Infinite))
        .collect::<Result<Vec<_>>>()?;
    r.check(
        "completion vectors have no finite approximation in the table",
        hb.completion.len(),
        infinite.iter().filter(|&&b| b).count(),
        infinite.iter().all(|&b| b),
    );
    r.info("span dimension", hb.span.len());
    r.artifact(
        "completion",
        hb.completion.iter().map(ray_json).collect::<Vec<_>>(),
    );
    Ok(r)
}

/// At least `2ⁿ(1 − 2^(−c))` vectors of any orthonormal basis have
/// `K ≥ n − c`.
pub fn audit_incompressibility_quantum(
    basis: &[Ray],
    table: &HaltTable,
    c: u64,
) -> Result<AuditReport> {
    let n = table.output_width();
    if basis.len() != 1 << n {
        return Err(Error::Param(format!(
            "a basis of {n} qubits needs {} vectors, got {}",
            1usize << n,
            basis.len()
        )));
    }
    check_orthonormal(basis)?;
    let threshold = n as i64 - c as i64;
    require_complete(table, threshold - 1)?;
    let mut r = start("incompressibility-quantum", table);
    r.param("c", c);
    let mut count = 0u64;
    let mut shared: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut values = Vec::new();
    for (i, v) in basis.iter().enumerate() {
        let e = k_ray(v, table)?;
        if e.value.finite().is_none_or(|k| k as i64 >= threshold) {
            count += 1;
        } else if let Some(w) = &e.witness {
            shared.entry(w.to_string()).or_default().push(i);
        }
        values.push(cost(e.value));
    }
    let bound = counting_bound(n, c);
    r.check(
        format!("#{{v : K(v) ≥ {threshold}}} ≥ 2ⁿ(1 − 2^(−c))"),
        rational(&bound),
        count,
        BigRational::from(BigInt::from(count)) >= bound,
    );
    let sharing = shared.values().filter(|v| v.len() > 1).count();
    r.info("short witnesses shared by several basis vectors", sharing);
    r.artifact("values", values);
    r.artifact("short_witnesses", json!(shared));
    Ok(r)
}

/// For each classical basis state with a direct program, `K` is at most
/// that program's length; the saving from approximation is reported.
pub fn audit_consistency(table: &HaltTable) -> Result<AuditReport> {
    let n = table.output_width();
    let mut r = start("consistency", table);
    let mut gaps: BTreeMap<u64, u64> = BTreeMap::new();
    let one = RingReal::one();
    for x in BitString::all_of_length(n) {
        let e = basis_state(n, &x)?;
        let mut direct = None;
        for rec in table.records() {
            if fidelity(&rec.output, &e)? == one {
                direct = Some(rec.bits.len() as u64);
                break;
            }
        }
        let Some(direct_min) = direct else {
            r.info(
                format!("|{x}⟩ has no direct program in the table"),
                Value::Null,
            );
            continue;
        };
        let k = k_quantum(&e, table)?.value;
        let kv = k.finite().expect("a direct program gives a finite value");
        r.check(
            format!("K(|{x}⟩) ≤ shortest direct program"),
            direct_min,
            kv,
            kv <= direct_min,
        );
        *gaps.entry(direct_min - kv.min(direct_min)).or_default() += 1;
    }
    let hist: BTreeMap<String, u64> = gaps.into_iter().map(|(g, c)| (g.to_string(), c)).collect();
    r.info("gap histogram", json!(hist));
    Ok(r)
}

/// `(|0…0⟩ + |x⟩)/√2`.
pub fn subadditivity_state(x: &BitString) -> Result<PureState> {
    let n = x.len();
    let ix = x
        .index()
        .map(|_| x.to_uint() as usize)
        .ok_or_else(|| Error::Param("x too long".into()))?;
    if ix == 0 {
        return Err(Error::Param("x must not be all zeros".into()));
    }
    let mut amps = vec![Amp::zero(); 1 << n];
    amps[0] = Amp::real(RingReal::inv_sqrt2());
    amps[ix] = Amp::real(RingReal::inv_sqrt2());
    PureState::new(n, amps)
}

pub fn subadditivity_witness(x: &BitString, table: &HaltTable) -> Result<AuditReport> {
    let n = x.len();
    let y = subadditivity_state(x)?;
    let mut r = start("subadditivity", table);
    r.param("x", x.to_string());
    let zero = PureState::zeros(n);
    let ex = basis_state(n, x)?;
    let half = RingReal::frac(1, 2);
    for (label, other) in [("x", &ex), ("0…0", &zero)] {
        let f = fidelity(&y, other)?;
        r.check(
            format!("fidelity(y, |{label}⟩) = 1/2"),
            "1/2",
            f.to_literal(),
            f == half,
        );
        let a = ceil_neg_log2(&f)?;
        r.check(
            format!("approximation part against |{label}⟩ = 1"),
            1,
            cost(a),
            a == Cost::Finite(1),
        );
    }
    let k0 = k_quantum(&zero, table)?;
    let (Some(w0), Some(z0)) = (&k0.witness, &k0.directly_computed) else {
        return Err(Error::Table("no program approximates |0…0⟩".into()));
    };
    let via = ceil_neg_log2(&fidelity(z0, &y)?)?.plus(w0.len() as u64);
    let ky = k_quantum(&y, table)?;
    let kv = ky.value.min(via);
    r.check(
        "K(y) ≤ K(|0…0⟩) + 1",
        cost(k0.value.plus(1)),
        cost(kv),
        kv <= k0.value.plus(1),
    );
    let kx = k_quantum(&ex, table)?;
    r.info("K(|x⟩)", cost(kx.value));
    r.info("K(y)", cost(kv));
    r.info("K(|0…0⟩)", cost(k0.value));
    r.artifact("y", state_json(&y));
    r.artifact("zero_witness", w0.to_string());
    Ok(r)
}

/// Runs `REPAUX; HALT` with `aux = p` and checks the output is `m` copies
/// of what `p` computes.
pub fn cloning_check(p: &BitString, n: usize, m: usize, workspace: usize) -> Result<AuditReport> {
    let spec = MachineSpec::new(workspace, Mode::CondN)?;
    let copies = ConditionSpec::new(n).with_copies(m).with_aux(p.clone());
    copies.validate(&spec)?;
    let single = ConditionSpec::new(n);
    let program = decode_program(p, &spec)
        .map_err(|e| Error::Param(format!("{p} is not an accepted program: {e}")))?;
    if let Some(q) = program
        .instructions
        .iter()
        .flat_map(Instruction::qubits)
        .find(|&q| q >= n)
    {
        return Err(Error::Param(format!(
            "{p} touches qubit {q} outside its {n} output qubits"
        )));
    }
    let x = match run(&spec, p, &single, default_fuel(p.len(), &single)) {
        RunResult::Halted { output, .. } => output,
        other => return Err(Error::Param(format!("{p} does not halt: {other:?}"))),
    };
    let witness: BitString = CLONING_WITNESS.parse()?;
    let out = run(
        &spec,
        &witness,
        &copies,
        default_fuel(witness.len(), &copies),
    );
    let want = tensor_power(&x, m);
    let mut r = AuditReport::new("cloning");
    r.param("p", p.to_string())
        .param("n", n)
        .param("m", m)
        .param("W", workspace);
    let same = out.output().is_some_and(|o| o.same_ray(&want));
    r.check(
        "output = |x⟩^⊗m",
        "exact",
        if same { "exact" } else { "differs" },
        same,
    );
    r.check(
        "K(|x⟩^⊗m | p, n, m) ≤ l(witness)",
        witness.len(),
        witness.len(),
        same,
    );
    r.artifact("witness", CLONING_WITNESS);
    r.artifact("x", state_json(&x));
    if let Some(o) = out.output() {
        r.artifact("output", state_json(o));
    }
    Ok(r)
}

/// `max |K_A(x) − K_B(x)|` over a corpus, each value certified on its own
/// machine.
pub fn invariance_gap(
    a: &MachineSpec,
    b: &MachineSpec,
    corpus: &[PureState],
    budget: u128,
) -> Result<AuditReport> {
    if corpus.is_empty() {
        return Err(Error::Param("empty corpus".into()));
    }
    let mut r = AuditReport::new("invariance");
    r.param("A", json!(a))
        .param("B", json!(b))
        .param("targets", corpus.len());
    let values = |spec: &MachineSpec| -> Result<Vec<KEstimate>> {
        let mut by_n: BTreeMap<usize, u64> = BTreeMap::new();
        for t in corpus {
            let bnd = basis_bound(t, spec)?;
            let e = by_n.entry(t.qubits()).or_default();
            *e = (*e).max(bnd);
        }
        let mut tables = BTreeMap::new();
        for (&n, &len) in &by_n {
            let cfg = EnumConfig::new(len as usize).budget(budget);
            tables.insert(n, dovetail(spec, &ConditionSpec::new(n), &cfg)?);
        }
        corpus
            .iter()
            .map(|t| k_exact_in(t, &tables[&t.qubits()]))
            .collect()
    };
    let ka = values(a)?;
    let kb = values(b)?;
    let mut gap = 0u64;
    let mut rows = Vec::new();
    for ((t, ea), eb) in corpus.iter().zip(&ka).zip(&kb) {
        let (va, vb) = (
            ea.value.finite().unwrap_or(0),
            eb.value.finite().unwrap_or(0),
        );
        gap = gap.max(va.abs_diff(vb));
        rows.push(json!({ "state": state_json(t), "A": va, "B": vb }));
    }
    r.check(
        "every value certified on both machines",
        corpus.len(),
        ka.iter().chain(&kb).filter(|e| e.exact).count() / 2,
        ka.iter().chain(&kb).all(|e| e.exact),
    );
    r.info("max |K_A − K_B|", gap);
    r.artifact("values", rows);
    Ok(r)
}

fn shift(ins: &Instruction, f: impl Fn(usize) -> usize) -> Instruction {
    match *ins {
        Instruction::Rot(q) => Instruction::Rot(f(q)),
        Instruction::Not(q) => Instruction::Not(f(q)),
        Instruction::Cnot(c, t) => Instruction::Cnot(f(c), f(t)),
        other => other,
    }
}

/// Runs `p_x` then `p_y` (moved to the second block of qubits) as one
/// program on the `2n` machine.
pub fn concatenate(
    px: &BitString,
    py: &BitString,
    small: &MachineSpec,
    big: &MachineSpec,
    n: usize,
) -> Option<BitString> {
    let dx = decode_program(px, small).ok()?;
    let dy = decode_program(py, small).ok()?;
    if dx.uses_aux() || dy.uses_aux() {
        return None;
    }
    let body = |d: &crate::qpl::Program, f: &dyn Fn(usize) -> usize| -> Vec<Instruction> {
        d.instructions
            .iter()
            .filter(|i| **i != Instruction::Halt)
            .map(|i| shift(i, f))
            .collect()
    };
    let mut ins = body(&dx, &|q| if q < n { q } else { q + n });
    ins.extend(body(&dy, &|q| q + n));
    if ins
        .iter()
        .flat_map(Instruction::qubits)
        .any(|q| q >= big.workspace())
    {
        return None;
    }
    ins.push(Instruction::Halt);
    Some(assemble(&ins, big, 2 * n))
}

/// Restricted subadditivity over pairs of table states: measured glue cost
/// of concatenation and the overlap constant.
pub fn subadditive_restricted_audit(small: &HaltTable, big: &HaltTable) -> Result<AuditReport> {
    let n = small.output_width();
    if big.output_width() != 2 * n {
        return Err(Error::TargetWidth {
            target: 2 * n,
            table: big.output_width(),
        });
    }
    let mut r = start("subadditive-restricted", small);
    r.param("big_W", big.spec().workspace())
        .param("big_max_len", big.max_len());
    let cond2 = big.cond().clone();
    let states = shortest_programs(small);
    let mut c_concat: Option<i64> = None;
    let mut c_overlap: Option<i64> = None;
    let mut glued_ok = 0u64;
    let mut rows = Vec::new();
    let mut pairs = Vec::new();
    for rx in &states {
        for ry in &states {
            let t = tensor(&rx.output, &ry.output);
            let mut kt = k_quantum(&t, big)?.value;
            let glued = concatenate(&rx.bits, &ry.bits, small.spec(), big.spec(), n);
            let lx = rx.bits.len() as i64;
            let ly = ry.bits.len() as i64;
            let mut glue = None;
            if let Some(g) = &glued {
                let out = run(big.spec(), g, &cond2, default_fuel(g.len(), &cond2));
                if out.output().is_some_and(|o| o.same_ray(&t)) {
                    glued_ok += 1;
                    kt = kt.min(Cost::Finite(g.len() as u64));
                    let c = g.len() as i64 - lx - ly;
                    glue = Some(c);
                    c_concat = Some(c_concat.map_or(c, |m| m.max(c)));
                }
            }
            let f = fidelity(&rx.output, &ry.output)?;
            let a = ceil_neg_log2(&f)?;
            let ky = k_quantum(&ry.output, small)?.value;
            if let (Cost::Finite(kt), Cost::Finite(a), Cost::Finite(ky)) = (kt, a, ky) {
                let c = kt as i64 - ky as i64 - a as i64;
                c_overlap = Some(c_overlap.map_or(c, |m| m.max(c)));
            }
            pairs.push((kt, lx + ly, glue.is_some()));
            rows.push(json!({
                "x": rx.bits, "y": ry.bits, "glued": glued, "glue_cost": glue, "K_xy": cost(kt),
            }));
        }
    }
    r.param("pairs", pairs.len());
    r.info("pairs glued by concatenation", glued_ok);
    if let Some(c) = c_concat {
        let ok = pairs
            .iter()
            .filter(|p| p.2)
            .all(|&(kt, l, _)| kt.finite().is_some_and(|k| k as i64 <= l + c));
        r.check(
            "K(x⊗y) ≤ l(p_x) + l(p_y) + c_concat",
            format!("c_concat = {c}"),
            "all glued pairs",
            ok,
        );
    }
    if let Some(c) = c_overlap {
        r.info("c in K(x⊗y) ≤ K(y) − log‖⟨x|y⟩‖² + c", c);
    }
    let big_n = 1u64 << n;
    let (lo, _) = multiples_bounds(n as u32, 2, 0)?;
    r.info(
        format!("log C({}, 2) for the x = y regime", big_n + 1),
        format!("{lo:.4}"),
    );
    r.artifact("pairs", rows);
    Ok(r)
}
