//! The commands of the `nichols` binary.

use nichols_core::double::{canonical_coproduct_check, cc_inverse_check, hopf_check, Double};
use nichols_core::freealg::word_digits;
use nichols_core::hwmod::{qybe_check, HwModule, WeightSpec};
use nichols_core::nichols::{coideal_filtration_check, hilbert_check, root_product_series, Nichols, Pbw};
use nichols_core::pairing::{pbw_duality_check, simple_root_scalars, DualPbw, Pairing};
use nichols_core::rmatrix::{
    compare_module_r, expand, factor_inverse_check, universal_r, validate_group, GroupAssignment, RFactorization,
};
use nichols_core::weylgpd::{format_weight, height, orbit, positive_roots_with, Bichar, RootDatum, RootOptions};
use serde_json::{json, Map, Value};

use crate::json::{cyclotomic, order, weight};
use crate::spec::{self, JobSpec};
use crate::{CliError, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RMode {
    Factorized,
    Module,
    Expand,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Qybe,
    Hopf,
    Coideal,
    Duality,
    Canonical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Roots,
    Cartan,
    Orbit,
    Pbw,
    Hilbert,
    PairingCheck,
    Rmatrix(RMode),
    Verify(Check),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Roots => "roots",
            Command::Cartan => "cartan",
            Command::Orbit => "orbit",
            Command::Pbw => "pbw",
            Command::Hilbert => "hilbert",
            Command::PairingCheck => "pairing-check",
            Command::Rmatrix(RMode::Factorized) => "rmatrix --factorized",
            Command::Rmatrix(RMode::Module) => "rmatrix --module",
            Command::Rmatrix(RMode::Expand) => "rmatrix --expand",
            Command::Verify(Check::Qybe) => "verify qybe",
            Command::Verify(Check::Hopf) => "verify hopf",
            Command::Verify(Check::Coideal) => "verify coideal",
            Command::Verify(Check::Duality) => "verify duality",
            Command::Verify(Check::Canonical) => "verify canonical",
        }
    }
}

macro_rules! out {
    ($t:expr, $($arg:tt)*) => {{
        $t.push_str(&format!($($arg)*));
        $t.push('\n');
    }};
}

struct Bounds {
    /// Set by the spec options or the environment.
    explicit_degree: Option<u32>,
    max_degree: u32,
    full_dim_limit: u128,
    max_module_dim: usize,
    max_terms: usize,
    max_objects: usize,
    canonical_height: u32,
}

struct Job<'s> {
    spec: &'s JobSpec,
    chi: Bichar,
    bounds: Bounds,
    rank: usize,
}

pub fn run(command: &Command, spec: &JobSpec, env_degree: Option<u32>) -> Report {
    let result = Job::new(spec, env_degree).and_then(|job| job.dispatch(command));
    result.unwrap_or_else(|e| Report::error(command.name(), &e))
}

fn letters(word: &[usize]) -> String {
    word.iter().map(|i| (i + 1).to_string()).collect()
}

impl<'s> Job<'s> {
    fn new(spec: &'s JobSpec, env_degree: Option<u32>) -> Result<Job<'s>, CliError> {
        let o = &spec.options;
        let explicit_degree = o.max_degree.or(env_degree);
        let bounds = Bounds {
            explicit_degree,
            max_degree: explicit_degree.unwrap_or(spec::DEFAULT_MAX_DEGREE),
            full_dim_limit: o.full_dim_limit.unwrap_or(spec::DEFAULT_FULL_DIM_LIMIT),
            max_module_dim: o.max_module_dim.unwrap_or(spec::DEFAULT_MAX_MODULE_DIM),
            max_terms: o.max_terms.unwrap_or(spec::DEFAULT_MAX_TERMS),
            max_objects: o.max_objects.unwrap_or(spec::DEFAULT_MAX_OBJECTS),
            canonical_height: o.canonical_height.unwrap_or(spec::DEFAULT_CANONICAL_HEIGHT),
        };
        Ok(Job {
            chi: spec.bichar()?,
            rank: spec.rank(),
            spec,
            bounds,
        })
    }

    fn dispatch(&self, command: &Command) -> Result<Report, CliError> {
        match command {
            Command::Roots => self.roots_cmd(),
            Command::Cartan => self.cartan_cmd(),
            Command::Orbit => self.orbit_cmd(),
            Command::Pbw => self.pbw_cmd(),
            Command::Hilbert => self.hilbert_cmd(),
            Command::PairingCheck => self.pairing_cmd(),
            Command::Rmatrix(m) => self.rmatrix_cmd(*m),
            Command::Verify(Check::Qybe) => self.qybe_cmd(),
            Command::Verify(Check::Hopf) => self.hopf_cmd(),
            Command::Verify(Check::Coideal) => self.coideal_cmd(),
            Command::Verify(Check::Duality) => self.duality_cmd(),
            Command::Verify(Check::Canonical) => self.canonical_cmd(),
        }
    }

    fn w(&self, beta: &nichols_core::weylgpd::Weight) -> String {
        format_weight(beta, self.rank)
    }

    fn datum(&self) -> Result<RootDatum, CliError> {
        let opts = RootOptions {
            start_letter: self.spec.options.start_letter.map(|s| s - 1),
            ..RootOptions::default()
        };
        Ok(positive_roots_with(&self.chi, opts)?)
    }

    /// The whole algebra when it is small enough (or ends within an explicit
    /// degree bound), otherwise all components up to the degree bound.
    fn window(&self, datum: &RootDatum) -> Result<Nichols, CliError> {
        let top = datum
            .roots
            .iter()
            .try_fold(0u32, |acc, r| r.order.finite().map(|n| acc + (n - 1) * r.height()));
        let full = match (top, datum.dimension(), self.bounds.explicit_degree) {
            (Some(t), _, Some(h)) => t <= h,
            (Some(_), Some(d), None) => d <= self.bounds.full_dim_limit,
            _ => false,
        };
        match top {
            Some(t) if full => Ok(Nichols::full(&self.chi, t + 1)?),
            _ => Ok(Nichols::truncated(&self.chi, self.bounds.max_degree)?),
        }
    }

    fn window_fields(&self, n: &Nichols, text: &mut String, fields: &mut Map<String, Value>) {
        if n.is_complete() {
            out!(text, "window: full algebra, dim {}", n.total_dim().unwrap_or(0));
        } else {
            out!(text, "window: total degree <= {}", n.max_height());
        }
        fields.insert("complete".into(), Value::from(n.is_complete()));
        fields.insert("max_height".into(), Value::from(n.max_height()));
    }

    fn need_complete(&self, n: &Nichols) -> Result<(), CliError> {
        if n.is_complete() {
            Ok(())
        } else {
            Err(CliError::Bound(format!(
                "the whole algebra is needed; it does not fit the bounds (dimension limit {}, degree {})",
                self.bounds.full_dim_limit, self.bounds.max_degree
            )))
        }
    }

    fn roots_cmd(&self) -> Result<Report, CliError> {
        let datum = self.datum()?;
        let mut t = String::new();
        out!(t, "rank {}", self.rank);
        out!(t, "word {}", letters(&datum.word));
        let mut roots = Vec::new();
        for (k, r) in datum.roots.iter().enumerate() {
            out!(t, "beta_{} = {}  q = {}  N = {}", k + 1, self.w(&r.coords), r.q, r.order);
            roots.push(json!({
                "coords": weight(&r.coords, self.rank),
                "q_beta": cyclotomic(&r.q),
                "N_beta": r.order.finite().map_or(Value::Null, Value::from),
            }));
        }
        match datum.dimension() {
            Some(d) => out!(t, "dimension {d}"),
            None => out!(t, "dimension infinite"),
        }
        let mut f = Map::new();
        f.insert("rank".into(), Value::from(self.rank));
        f.insert("word".into(), Value::from(datum.word.iter().map(|i| i + 1).collect::<Vec<_>>()));
        f.insert("roots".into(), Value::Array(roots));
        f.insert("dimension".into(), datum.dimension().map_or(Value::Null, |d| Value::from(d.to_string())));
        Ok(Report::new("roots", Status::Pass, t, f))
    }

    fn cartan_cmd(&self) -> Result<Report, CliError> {
        let c = self.chi.cartan_matrix(RootOptions::default().cartan_bound)?;
        let mut t = String::new();
        for row in &c {
            out!(t, "{}", row.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(""));
        }
        let mut f = Map::new();
        f.insert("rank".into(), Value::from(self.rank));
        f.insert("cartan".into(), json!(c));
        Ok(Report::new("cartan", Status::Pass, t, f))
    }

    fn orbit_cmd(&self) -> Result<Report, CliError> {
        let o = orbit(&self.chi, self.bounds.max_objects, RootOptions::default().cartan_bound)?;
        let mut t = String::new();
        out!(t, "objects {}", o.objects.len());
        out!(t, "standard {}", o.is_standard());
        let mut objects = Vec::new();
        for (x, obj) in o.objects.iter().enumerate() {
            let q: Vec<Vec<String>> = obj.bichar.matrix().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
            let edges: Vec<String> = o.edges[x].iter().map(|e| e.to_string()).collect();
            out!(t, "object {x}: q = {:?} cartan = {:?} reflections -> [{}]", q, obj.cartan, edges.join(", "));
            let qj: Vec<Vec<Value>> = obj.bichar.matrix().iter().map(|r| r.iter().map(cyclotomic).collect()).collect();
            objects.push(json!({ "index": x, "braiding": qj, "cartan": obj.cartan, "reflections": o.edges[x] }));
        }
        let mut f = Map::new();
        f.insert("rank".into(), Value::from(self.rank));
        f.insert("standard".into(), Value::from(o.is_standard()));
        f.insert("objects".into(), Value::Array(objects));
        Ok(Report::new("orbit", Status::Pass, t, f))
    }

    fn pbw_cmd(&self) -> Result<Report, CliError> {
        let datum = self.datum()?;
        let n = self.window(&datum)?;
        let pbw = Pbw::new(&n, &datum)?;
        let mut t = String::new();
        let mut f = Map::new();
        self.window_fields(&n, &mut t, &mut f);
        let mut roots = Vec::new();
        for (k, rv) in pbw.vectors().iter().enumerate() {
            let vector = pbw.root_vector_string(&n, k);
            let lyndon = word_digits(&rv.lyndon);
            out!(
                t,
                "e_{} [{}]: lyndon {}  hyperletter {}  N = {}  e = {}",
                k + 1,
                self.w(&rv.root),
                lyndon,
                if rv.hyperletter_agrees { "agrees" } else { "differs" },
                order(pbw.orders()[k]),
                vector
            );
            roots.push(json!({
                "coords": weight(&rv.root, self.rank),
                "lyndon": lyndon,
                "hyperletter_agrees": rv.hyperletter_agrees,
                "q_beta": cyclotomic(pbw.q(k)),
                "N_beta": order(pbw.orders()[k]),
                "vector": vector,
            }));
        }
        f.insert("roots".into(), Value::Array(roots));
        Ok(Report::new("pbw", Status::Pass, t, f))
    }

    fn hilbert_cmd(&self) -> Result<Report, CliError> {
        let datum = self.datum()?;
        let n = self.window(&datum)?;
        let rep = hilbert_check(&datum, &n);
        let expected = root_product_series(&datum, n.max_height());
        let mut t = String::new();
        let mut f = Map::new();
        self.window_fields(&n, &mut t, &mut f);
        let mut series = Vec::new();
        for (deg, dim) in n.hilbert_series() {
            if dim == 0 {
                continue;
            }
            let e = expected.get(&deg).copied().unwrap_or(0);
            out!(t, "{}: {} (product {})", self.w(&deg), dim, e);
            series.push(json!({ "degree": weight(&deg, self.rank), "dim": dim, "product": e.to_string() }));
        }
        for (deg, e, c) in &rep.mismatches {
            out!(t, "mismatch at {}: product {} computed {}", self.w(deg), e, c);
        }
        let mism: Vec<Value> = rep
            .mismatches
            .iter()
            .map(|(d, e, c)| json!({ "degree": weight(d, self.rank), "product": e.to_string(), "dim": c }))
            .collect();
        f.insert("series".into(), Value::Array(series));
        f.insert("mismatches".into(), Value::Array(mism));
        f.insert("total_dim".into(), n.total_dim().map_or(Value::Null, Value::from));
        Ok(Report::new("hilbert", Status::from_bool(rep.passed()), t, f))
    }

    fn pairing_cmd(&self) -> Result<Report, CliError> {
        let datum = self.datum()?;
        let n = self.window(&datum)?;
        let pbw = Pbw::new(&n, &datum)?;
        let pairing = Pairing::new(&n)?;
        let dual = DualPbw::new(&n, &pbw, &pairing)?;
        let mut t = String::new();
        let mut f = Map::new();
        self.window_fields(&n, &mut t, &mut f);
        let mut roots = Vec::new();
        for (k, beta) in pbw.roots().iter().enumerate() {
            out!(t, "eta(e_{0}, f_{0}) at {1} = {2}", k + 1, self.w(beta), dual.eta(k));
            roots.push(json!({ "coords": weight(beta, self.rank), "eta_beta": cyclotomic(dual.eta(k)) }));
        }
        let simple = simple_root_scalars(&pbw, &dual);
        out!(t, "eta at simple roots is -1: {simple}");
        f.insert("roots".into(), Value::Array(roots));
        f.insert("simple_roots_minus_one".into(), Value::from(simple));
        Ok(Report::new("pairing-check", Status::from_bool(simple), t, f))
    }

    fn duality_cmd(&self) -> Result<Report, CliError> {
        let datum = self.datum()?;
        let n = self.window(&datum)?;
        let pbw = Pbw::new(&n, &datum)?;
        let pairing = Pairing::new(&n)?;
        let dual = DualPbw::new(&n, &pbw, &pairing)?;
        let rep = pbw_duality_check(&pbw, &dual, &pairing)?;
        let mut t = String::new();
        let mut f = Map::new();
        self.window_fields(&n, &mut t, &mut f);
        out!(t, "monomial pairs checked {}", rep.pairs_checked);
        for (d, a, b) in &rep.mismatches {
            out!(t, "mismatch at {}: monomials {} and {}", self.w(d), a, b);
        }
        f.insert("pairs_checked".into(), Value::from(rep.pairs_checked));
        let mism: Vec<Value> = rep
            .mismatches
            .iter()
            .map(|(d, a, b)| json!({ "degree": weight(d, self.rank), "e": a, "f": b }))
            .collect();
        f.insert("mismatches".into(), Value::Array(mism));
        Ok(Report::new("verify duality", Status::from_bool(rep.passed()), t, f))
    }

    fn double<'n>(&self, n: &'n Nichols) -> Result<(Double<'n>, &'static str), CliError> {
        match &self.spec.group {
            Some(_) => Ok((Double::group(n, self.spec.group_assignment(&self.chi)?)?, "group")),
            None => Ok((Double::torus(n), "torus")),
        }
    }

    fn hopf_cmd(&self) -> Result<Report, CliError> {
        let datum = self.datum()?;
        let n = self.window(&datum)?;
        let pbw = Pbw::new(&n, &datum)?;
        let (d, mode) = self.double(&n)?;
        let mut elems: Vec<_> = d.generators().into_iter().map(|(_, x)| x).collect();
        // products of two root vectors must stay inside the window
        let limit = if n.is_complete() { i32::MAX } else { n.max_height() as i32 / 2 };
        for rv in pbw.vectors() {
            if height(&rv.root) > 1 && height(&rv.root) <= limit {
                let e = d.e_elem(&rv.root, &rv.coords);
                elems.push(d.apply_omega(&e));
                elems.push(e);
            }
        }
        let rep = hopf_check(&d, &elems)?;
        let mut t = String::new();
        let mut f = Map::new();
        self.window_fields(&n, &mut t, &mut f);
        out!(t, "mode {mode}, elements {}", rep.elements);
        for (k, what) in &rep.failures {
            out!(t, "failure: {what} (case {k})");
        }
        f.insert("mode".into(), Value::from(mode));
        f.insert("elements".into(), Value::from(rep.elements));
        let fails: Vec<Value> = rep.failures.iter().map(|(k, w)| json!({ "case": k, "axiom": w })).collect();
        f.insert("failures".into(), Value::Array(fails));
        Ok(Report::new("verify hopf", Status::from_bool(rep.passed()), t, f))
    }

    fn coideal_cmd(&self) -> Result<Report, CliError> {
        let datum = self.datum()?;
        let n = self.window(&datum)?;
        let pbw = Pbw::new(&n, &datum)?;
        let mut t = String::new();
        let mut f = Map::new();
        self.window_fields(&n, &mut t, &mut f);
        let mut ok = true;
        let mut rows = Vec::new();
        for l in 1..=pbw.len() {
            let r = coideal_filtration_check(&n, &pbw, l)?;
            ok &= r.passed();
            out!(
                t,
                "l = {l}: right {} left {} generator {} sharp {} leading {}",
                r.right_coideal,
                r.left_coideal,
                r.generator_coproduct,
                r.generator_coproduct_sharp,
                r.leading_terms
            );
            rows.push(json!({
                "l": l,
                "right_coideal": r.right_coideal,
                "left_coideal": r.left_coideal,
                "generator_coproduct": r.generator_coproduct,
                "generator_coproduct_sharp": r.generator_coproduct_sharp,
                "leading_terms": r.leading_terms,
            }));
        }
        f.insert("positions".into(), Value::Array(rows));
        Ok(Report::new("verify coideal", Status::from_bool(ok), t, f))
    }

    fn canonical_cmd(&self) -> Result<Report, CliError> {
        let datum = self.datum()?;
        let n = self.window(&datum)?;
        let pairing = Pairing::new(&n)?;
        let d = Double::torus(&n);
        let h = self.bounds.canonical_height.min(n.max_height()) as i32;
        let inv = cc_inverse_check(&d, &pairing, h)?;
        let cop = canonical_coproduct_check(&d, &pairing, h)?;
        let mut t = String::new();
        let mut f = Map::new();
        self.window_fields(&n, &mut t, &mut f);
        out!(t, "total degree <= {h}: {} degrees", inv.degrees_checked);
        let mut fails = Vec::new();
        for (deg, what) in inv.failures.iter().chain(&cop.failures) {
            out!(t, "failure: {what} at {}", self.w(deg));
            fails.push(json!({ "degree": weight(deg, self.rank), "identity": what }));
        }
        f.insert("height".into(), Value::from(h));
        f.insert("degrees_checked".into(), Value::from(inv.degrees_checked));
        f.insert("failures".into(), Value::Array(fails));
        Ok(Report::new("verify canonical", Status::from_bool(inv.passed() && cop.passed()), t, f))
    }

    fn modules<'n>(&self, n: &'n Nichols, count: usize) -> Result<Vec<HwModule<'n>>, CliError> {
        let ws = self.spec.module_weights(count, &WeightSpec::standard(n))?;
        ws.into_iter()
            .map(|w| HwModule::verma(n, w, self.bounds.max_module_dim).map_err(CliError::from))
            .collect()
    }

    fn qybe_cmd(&self) -> Result<Report, CliError> {
        let datum = self.datum()?;
        let n = self.window(&datum)?;
        self.need_complete(&n)?;
        let pairing = Pairing::new(&n)?;
        let d = Double::torus(&n);
        let mods = self.modules(&n, 3)?;
        let dims: Vec<usize> = mods.iter().map(|m| m.dim()).collect();
        let res = qybe_check(&d, &pairing, [&mods[0], &mods[1], &mods[2]])?;
        let mut t = String::new();
        let mut f = Map::new();
        self.window_fields(&n, &mut t, &mut f);
        out!(t, "modules of dimension {:?}, tensor dimension {}", dims, dims.iter().product::<usize>());
        if let Some((r, c)) = res {
            out!(t, "R12 R13 R23 and R23 R13 R12 differ at entry ({r}, {c})");
        }
        f.insert("module_dims".into(), json!(dims));
        f.insert("first_difference".into(), res.map_or(Value::Null, |(r, c)| json!([r, c])));
        Ok(Report::new("verify qybe", Status::from_bool(res.is_none()), t, f))
    }

    fn group(&self) -> Result<Result<GroupAssignment, Report>, CliError> {
        let assign = self.spec.group_assignment(&self.chi)?;
        let rep = validate_group(&assign, &self.chi);
        if rep.valid {
            return Ok(Ok(assign));
        }
        let mut t = String::new();
        out!(t, "group assignment does not realize the braiding");
        if !rep.message.is_empty() {
            out!(t, "{}", rep.message);
        }
        let pairs: Vec<Value> = rep.mismatches.iter().map(|(i, j)| json!([i + 1, j + 1])).collect();
        for (i, j) in &rep.mismatches {
            out!(t, "gamma_{}(g_{}) != q_{}{}", j + 1, i + 1, i + 1, j + 1);
        }
        let mut f = Map::new();
        f.insert("mismatches".into(), Value::Array(pairs));
        if let Some(s) = &rep.suggestion {
            let d = s.group.divisors();
            let trim = |e: &[i32; 4]| e[..d.len()].to_vec();
            out!(t, "suggestion: divisors {:?}", d);
            f.insert(
                "suggestion".into(),
                json!({
                    "divisors": d,
                    "g": s.g.iter().map(trim).collect::<Vec<_>>(),
                    "gamma": s.gamma.iter().map(trim).collect::<Vec<_>>(),
                }),
            );
        }
        Ok(Err(Report::new("rmatrix", Status::InputError, t, f)))
    }

    fn rmatrix_cmd(&self, mode: RMode) -> Result<Report, CliError> {
        let name = Command::Rmatrix(mode).name();
        let assign = match self.group()? {
            Ok(a) => a,
            Err(mut rep) => {
                rep.json["command"] = Value::from(name);
                return Ok(rep);
            }
        };
        let datum = self.datum()?;
        let n = self.window(&datum)?;
        let pbw = Pbw::new(&n, &datum)?;
        let pairing = Pairing::new(&n)?;
        let dual = DualPbw::new(&n, &pbw, &pairing)?;
        let r = universal_r(&pbw, &dual, &assign)?;
        let mut t = String::new();
        let mut f = Map::new();
        self.window_fields(&n, &mut t, &mut f);
        out!(t, "group Z/{:?}, order {}", assign.group.divisors(), assign.group.order());
        f.insert("group_order".into(), Value::from(assign.group.order()));
        match mode {
            RMode::Factorized => {
                f.insert("factors".into(), self.factor_json(&r, &mut t));
                Ok(Report::new(name, Status::Pass, t, f))
            }
            RMode::Expand => {
                self.need_complete(&n)?;
                let d = Double::group(&n, assign)?;
                let inverses = factor_inverse_check(&d, &pbw, &dual, &r)?;
                let full = expand(&d, &pbw, &dual, &r, None, self.bounds.max_terms)?;
                let rep = nichols_core::rmatrix::verify_r(&d, &full)?;
                out!(t, "terms {}", rep.terms);
                out!(t, "R Delta = Delta^cop R: {}", rep.intertwining_failures.is_empty());
                for g in &rep.intertwining_failures {
                    out!(t, "  fails for {g}");
                }
                out!(t, "(Delta x id) R = R13 R23: {}", rep.delta_left);
                out!(t, "(id x Delta) R = R13 R12: {}", rep.delta_right);
                out!(t, "invertible: {}", rep.invertible);
                out!(t, "counit: {}", rep.counit);
                out!(t, "factor inverses: {inverses}");
                f.insert("terms".into(), Value::from(rep.terms));
                f.insert("intertwining_failures".into(), json!(rep.intertwining_failures));
                f.insert("delta_left".into(), Value::from(rep.delta_left));
                f.insert("delta_right".into(), Value::from(rep.delta_right));
                f.insert("invertible".into(), Value::from(rep.invertible));
                f.insert("counit".into(), Value::from(rep.counit));
                f.insert("factor_inverses".into(), Value::from(inverses));
                Ok(Report::new(name, Status::from_bool(rep.passed() && inverses), t, f))
            }
            RMode::Module => {
                self.need_complete(&n)?;
                let d = Double::torus(&n);
                let mods = self.modules(&n, 2)?;
                let cmp = compare_module_r(&d, &pbw, &dual, &pairing, &r, &mods[0], &mods[1])?;
                out!(t, "modules of dimension {} and {}", mods[0].dim(), mods[1].dim());
                out!(t, "factorized part acts as C_xy: {}", cmp.theta_matches);
                let mut blocks = Vec::new();
                for (a, b, c) in &cmp.block_scalars {
                    out!(t, "block ({}, {}): f_xy^-1 = {}", self.w(a), self.w(b), c);
                    blocks.push(json!({
                        "x_degree": weight(a, self.rank),
                        "y_degree": weight(b, self.rank),
                        "scalar": cyclotomic(c),
                    }));
                }
                f.insert("theta_matches".into(), Value::from(cmp.theta_matches));
                f.insert("block_scalars".into(), Value::Array(blocks));
                Ok(Report::new(name, Status::from_bool(cmp.theta_matches), t, f))
            }
        }
    }

    fn factor_json(&self, r: &RFactorization, t: &mut String) -> Value {
        let mut out = Vec::new();
        for fac in &r.factors {
            let coeffs: Vec<String> = fac.coeffs.iter().map(|c| c.to_string()).collect();
            out!(
                t,
                "beta_{} = {}: N = {} eta = {} coeffs [{}]",
                fac.index + 1,
                self.w(&fac.root),
                fac.order,
                fac.eta,
                coeffs.join(", ")
            );
            out.push(json!({
                "position": fac.index + 1,
                "coords": weight(&fac.root, self.rank),
                "q_beta": cyclotomic(&fac.q),
                "N_beta": fac.order,
                "eta_beta": cyclotomic(&fac.eta),
                "coeffs": fac.coeffs.iter().map(cyclotomic).collect::<Vec<_>>(),
            }));
        }
        Value::Array(out)
    }
}
