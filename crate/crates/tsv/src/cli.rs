//! Command dispatch and report emission.

use std::fmt::Display;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use tsv_core::decomp::{self, BatchReport, RecipeKind};
use tsv_core::endalg::{self, DivisionVerdict, ZeroDivisorCertificate};
use tsv_core::symplectic::{self, build_pair, BlockIso};
use tsv_core::torus::{self, ComplexTorus};
use tsv_core::{BigRational, Error, IntMatrix, Matrix, Scalar};

use crate::session::{matrix_strings, Session};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

const DEFAULT_BOUND: u32 = 2;
const DEFAULT_ISOGENY_BOUND: u32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tsv", version, about = "Exact computations with complex tori and their symplectic pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Session file (JSON).
    #[arg(long, global = true)]
    session: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficient bound for searches and generators (default 2; 3 for `isogeny`).
    #[arg(long, global = true)]
    bound: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the session and summarize its contents.
    Check,
    /// Dual torus.
    Dual {
        torus: String,
    },
    /// Basis of Hom(A, B).
    Hom {
        a: String,
        b: String,
    },
    /// Endomorphism ring: basis and structure constants.
    End {
        a: String,
    },
    /// Division verdict for End^0(A) with certificate.
    Endalg {
        a: String,
    },
    /// Search for an isogeny A -> B.
    Isogeny {
        a: String,
        b: String,
    },
    /// The symplectic pair A x A^.
    Pair {
        a: String,
    },
    /// Run the three symplectic oracles.
    SpVerify {
        blockiso: String,
    },
    Dagger {
        blockiso: String,
    },
    Ddagger {
        blockiso: String,
    },
    Swap {
        blockiso: String,
    },
    /// Lagrangian test for the span of the vectors in a basis file.
    Lagrangian {
        pair: String,
        basisfile: PathBuf,
        /// Skip the J-stability precondition.
        #[arg(long)]
        lattice: bool,
    },
    /// Generators of Sp(A x A^) with coefficients up to the bound.
    Generators {
        a: String,
        #[arg(value_name = "BOUND")]
        limit: Option<u32>,
    },
    /// Beta-isogeny / gamma-isogeny / graph classification.
    Classify {
        blockiso: String,
    },
    /// Kernel recipe with reconstruction check.
    Recipe {
        blockiso: String,
    },
    /// Classify every word over the generators.
    VerifyBatch {
        a: String,
        b: String,
        wordlen: usize,
    },
}

/// A failed command: message and exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

/// Exit code for a core error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TheoremViolation(_) | Error::OracleDisagreement(_) | Error::InconsistentAlgebra(_) => EXIT_VIOLATION,
        Error::NotSymplectic
        | Error::NotApplicable(_)
        | Error::NotAnIsogeny
        | Error::NotInvertible
        | Error::NotJStable
        | Error::DependentColumns => EXIT_FALSE,
        _ => EXIT_USAGE,
    }
}

/// Text lines plus the same data as JSON.
#[derive(Default)]
struct Report {
    lines: Vec<String>,
    data: Map<String, Value>,
    code: i32,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.data.insert(key.to_string(), v.into());
    }

    fn render(self, as_json: bool) -> (String, i32) {
        if as_json {
            let mut data = self.data;
            data.insert("exit_code".into(), json!(self.code));
            (serde_json::to_string_pretty(&Value::Object(data)).expect("report serializes") + "\n", self.code)
        } else {
            let mut s = self.lines.join("\n");
            s.push('\n');
            (s, self.code)
        }
    }
}

fn mat<T: Display>(m: &Matrix<T>) -> Value {
    json!(matrix_strings(m))
}

fn vec_text(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn vec_json(v: &[BigRational]) -> Value {
    json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn check(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

/// Runs one command line (including the program name) and returns the report
/// and exit code.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return (e.to_string(), code);
        }
    };
    let as_json = cli.json;
    match dispatch(cli) {
        Ok(r) => r.render(as_json),
        Err(f) => {
            if as_json {
                let v = json!({"error": f.message, "exit_code": f.code});
                (serde_json::to_string_pretty(&v).expect("error serializes") + "\n", f.code)
            } else {
                (format!("error: {}\n", f.message), f.code)
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<Report, Failure> {
    let path = cli.session.ok_or_else(|| Failure::usage("--session <file> is required"))?;
    let session = Session::load(&path).map_err(|e| Failure::usage(e.to_string()))?;
    let ctx = Ctx { session };
    match cli.command {
        Command::Check => ctx.check(),
        Command::Dual { torus } => ctx.dual(&torus),
        Command::Hom { a, b } => ctx.hom(&a, &b),
        Command::End { a } => ctx.end(&a),
        Command::Endalg { a } => ctx.endalg(&a),
        Command::Isogeny { a, b } => ctx.isogeny(&a, &b, cli.bound.unwrap_or(DEFAULT_ISOGENY_BOUND)),
        Command::Pair { a } => ctx.pair(&a),
        Command::SpVerify { blockiso } => ctx.sp_verify(&blockiso),
        Command::Dagger { blockiso } => ctx.transform(&blockiso, "dagger", BlockIso::dagger),
        Command::Ddagger { blockiso } => ctx.transform(&blockiso, "ddagger", BlockIso::ddagger),
        Command::Swap { blockiso } => ctx.transform(&blockiso, "swap", BlockIso::swap),
        Command::Lagrangian { pair, basisfile, lattice } => ctx.lagrangian(&pair, &basisfile, lattice),
        Command::Generators { a, limit } => ctx.generators(&a, limit.or(cli.bound).unwrap_or(DEFAULT_BOUND)),
        Command::Classify { blockiso } => ctx.classify(&blockiso),
        Command::Recipe { blockiso } => ctx.recipe(&blockiso),
        Command::VerifyBatch { a, b, wordlen } => ctx.verify_batch(&a, &b, wordlen, cli.bound.unwrap_or(DEFAULT_BOUND)),
    }
}

struct Ctx {
    session: Session,
}

impl Ctx {
    fn torus(&self, name: &str) -> Result<Arc<ComplexTorus>, Failure> {
        self.session.torus(name).ok_or_else(|| Failure::usage(format!("unknown torus {:?}", name)))
    }

    fn block_iso(&self, name: &str) -> Result<&BlockIso, Failure> {
        self.session.block_iso(name).ok_or_else(|| Failure::usage(format!("unknown block isomorphism {:?}", name)))
    }

    fn check(&self) -> Result<Report, Failure> {
        let s = &self.session;
        let mut r = Report::default();
        r.line(format!(
            "session ok: {} tori, {} morphisms, {} block isomorphisms (extension d = {})",
            s.tori().len(),
            s.morphisms().len(),
            s.block_isos().len(),
            s.extension_d()
        ));
        let mut tori = Vec::new();
        for t in s.tori() {
            r.line(format!("torus {}: dimension {}, J = {}", t.name(), t.dim(), t.complex_structure()));
            tori.push(json!({"name": t.name(), "dim": t.dim(), "J": mat(t.complex_structure())}));
        }
        let mut morphisms = Vec::new();
        for (name, f) in s.morphisms() {
            let degree = torus::is_isogeny(f)?;
            let deg_text =
                degree.as_ref().map(|d| format!("isogeny of degree {}", d)).unwrap_or_else(|| "not an isogeny".into());
            r.line(format!("morphism {}: {} -> {}, {}", name, f.source().name(), f.target().name(), deg_text));
            morphisms.push(json!({
                "name": name, "source": f.source().name(), "target": f.target().name(),
                "isogeny_degree": degree.map(|d| d.to_string()),
            }));
        }
        let mut isos = Vec::new();
        for (name, f) in s.block_isos() {
            let o = symplectic::symplectic_oracles(f);
            if !o.agree() {
                r.code = EXIT_VIOLATION;
            }
            let verdict = if o.agree() { o.dagger.to_string() } else { "oracles disagree".into() };
            r.line(format!(
                "block iso {}: {} -> {}, symplectic: {}",
                name,
                f.src().base().name(),
                f.dst().base().name(),
                verdict
            ));
            isos.push(json!({
                "name": name, "source": f.src().base().name(), "target": f.dst().base().name(),
                "oracles": {"dagger": o.dagger, "gram": o.gram, "unitary": o.unitary},
            }));
        }
        r.put("extension_d", s.extension_d());
        r.put("tori", tori);
        r.put("morphisms", morphisms);
        r.put("block_isos", isos);
        Ok(r)
    }

    fn dual(&self, name: &str) -> Result<Report, Failure> {
        let t = self.torus(name)?;
        let d = t.dual();
        let mut r = Report::default();
        r.line(format!("dual of {}: {}", t.name(), d.name()));
        r.line(format!("J = {}", d.complex_structure()));
        r.put("torus", t.name());
        r.put("dual", d.name());
        r.put("J", mat(d.complex_structure()));
        Ok(r)
    }

    fn hom(&self, a: &str, b: &str) -> Result<Report, Failure> {
        let (a, b) = (self.torus(a)?, self.torus(b)?);
        let basis = torus::hom_lattice(&a, &b)?;
        let mut r = Report::default();
        r.line(format!("Hom({}, {}): rank {}", a.name(), b.name(), basis.len()));
        for (k, f) in basis.iter().enumerate() {
            r.line(format!("  h{} = {}", k, f.matrix()));
        }
        r.put("source", a.name());
        r.put("target", b.name());
        r.put("rank", basis.len());
        r.put("basis", basis.iter().map(|f| mat(f.matrix())).collect::<Vec<_>>());
        Ok(r)
    }

    fn end(&self, a: &str) -> Result<Report, Failure> {
        let a = self.torus(a)?;
        let e = endalg::end_algebra(&a)?;
        let alg = e.algebra();
        let mut r = Report::default();
        r.line(format!("End({}): rank {}", a.name(), e.rank()));
        for (k, f) in e.basis().iter().enumerate() {
            r.line(format!("  e{} = {}", k, f.matrix()));
        }
        r.line(format!("one = {}", vec_text(alg.one())));
        let mut table = Vec::new();
        for i in 0..alg.dim() {
            let mut row = Vec::new();
            for j in 0..alg.dim() {
                let p = alg.mul(&alg.basis_element(i), &alg.basis_element(j));
                r.line(format!("  e{} * e{} = {}", i, j, vec_text(&p)));
                row.push(vec_json(&p));
            }
            table.push(row);
        }
        r.put("torus", a.name());
        r.put("rank", e.rank());
        r.put("basis", e.basis().iter().map(|f| mat(f.matrix())).collect::<Vec<_>>());
        r.put("one", vec_json(alg.one()));
        r.put("products", table);
        Ok(r)
    }

    fn endalg(&self, a: &str) -> Result<Report, Failure> {
        let a = self.torus(a)?;
        let e = endalg::end_algebra(&a)?;
        let v = endalg::division_verdict(e.algebra())?;
        if !endalg::verify_verdict(e.algebra(), &v) {
            return Err(Failure {
                code: EXIT_VIOLATION,
                message: format!("certificate for {} verdict does not verify", v.tag()),
            });
        }
        let mut r = Report::default();
        r.line(format!("End^0({}): rank {}", a.name(), e.rank()));
        r.line(format!("verdict: {}, rank {}", verdict_summary(&v), e.rank()));
        for l in certificate_lines(&v) {
            r.line(format!("certificate: {}", l));
        }
        r.line(format!("semisimple: {}", e.is_semisimple()));
        r.line(format!("commutative: {}", e.algebra().is_commutative()));
        r.put("torus", a.name());
        r.put("rank", e.rank());
        r.put("verdict", v.tag());
        r.put("summary", verdict_summary(&v));
        r.put("certificate", certificate_lines(&v));
        r.put("division", v.is_division());
        r.put("semisimple", e.is_semisimple());
        r.put("commutative", e.algebra().is_commutative());
        Ok(r)
    }

    fn isogeny(&self, a: &str, b: &str, bound: u32) -> Result<Report, Failure> {
        let (a, b) = (self.torus(a)?, self.torus(b)?);
        let mut r = Report::default();
        r.put("source", a.name());
        r.put("target", b.name());
        r.put("bound", bound);
        match torus::isogeny_witness(&a, &b, bound)? {
            Some(f) => {
                let degree = torus::is_isogeny(&f)?.ok_or(Error::NotAnIsogeny)?;
                let qi = torus::quasi_inverse(&f)?;
                r.line(format!("isogeny {} -> {}: {}, degree {}", a.name(), b.name(), f.matrix(), degree));
                r.line(format!("quasi-inverse: {} with composite multiplication by {}", qi.psi.matrix(), qi.n));
                r.put("isogenous", true);
                r.put("matrix", mat(f.matrix()));
                r.put("degree", degree.to_string());
                r.put("quasi_inverse", mat(qi.psi.matrix()));
                r.put("n", qi.n.to_string());
            }
            None => {
                let empty = torus::hom_lattice(&a, &b)?.is_empty();
                if empty {
                    r.line(format!("not isogenous: Hom({}, {}) = 0", a.name(), b.name()));
                } else {
                    r.line(format!(
                        "no isogeny {} -> {} among Hom-lattice combinations with coefficients in [-{}, {}]",
                        a.name(),
                        b.name(),
                        bound,
                        bound
                    ));
                }
                r.put("isogenous", Value::Null);
                r.put("hom_is_zero", empty);
                r.code = EXIT_FALSE;
            }
        }
        Ok(r)
    }

    fn pair(&self, a: &str) -> Result<Report, Failure> {
        let a = self.torus(a)?;
        let p = build_pair(a.clone());
        let mut r = Report::default();
        r.line(format!("pair {} x {}: rank {}", a.name(), p.dual().name(), p.rank()));
        r.line(format!("J_X = {}", p.complex_structure()));
        r.line(format!("S = {}", p.gram()));
        r.line(format!("psi = {}", p.psi()));
        r.line(format!("invariants: {}", check(p.invariants_hold())));
        r.put("base", a.name());
        r.put("dual", p.dual().name());
        r.put("rank", p.rank());
        r.put("J_X", mat(p.complex_structure()));
        r.put("S", mat(p.gram()));
        r.put("psi", mat(p.psi()));
        r.put("invariants_hold", p.invariants_hold());
        if !p.invariants_hold() {
            r.code = EXIT_VIOLATION;
        }
        Ok(r)
    }

    fn sp_verify(&self, name: &str) -> Result<Report, Failure> {
        let f = self.block_iso(name)?;
        let o = symplectic::symplectic_oracles(f);
        let mut r = Report::default();
        let oracles = format!("dagger {} gram {} unitary {}", check(o.dagger), check(o.gram), check(o.unitary));
        if o.agree() {
            r.line(format!("symplectic: {} (oracles: {})", o.dagger, oracles));
            r.code = if o.dagger { EXIT_OK } else { EXIT_FALSE };
            r.put("symplectic", o.dagger);
        } else {
            r.line(format!("symplectic: oracles disagree ({})", oracles));
            r.line(format!("rho = {}", f.rho()));
            r.code = EXIT_VIOLATION;
            r.put("symplectic", Value::Null);
        }
        r.put("name", name);
        r.put("oracles", json!({"dagger": o.dagger, "gram": o.gram, "unitary": o.unitary}));
        Ok(r)
    }

    fn transform(&self, name: &str, op: &str, t: fn(&BlockIso) -> BlockIso) -> Result<Report, Failure> {
        let f = self.block_iso(name)?;
        let g = t(f);
        let mut r = Report::default();
        r.line(format!("{}^{}: {} -> {}", name, op, g.src().base().name(), g.dst().base().name()));
        block_lines(&mut r, &g);
        r.put("name", name);
        r.put("operation", op);
        r.put("source", g.src().base().name());
        r.put("target", g.dst().base().name());
        r.put("blocks", block_json(&g));
        Ok(r)
    }

    fn lagrangian(&self, name: &str, basisfile: &PathBuf, lattice: bool) -> Result<Report, Failure> {
        let a = self.torus(name)?;
        let p = build_pair(a);
        let y = load_basis(basisfile, p.rank())?;
        let report = if lattice {
            symplectic::lattice_lagrangian_report(&p, &y)?
        } else {
            symplectic::lagrangian_report(&p, &y)?
        };
        let mut r = Report::default();
        r.line(format!(
            "lagrangian: {} (isotropic {} half-rank {} saturated {} unimodular {})",
            report.is_lagrangian(),
            check(report.isotropic),
            check(report.half_rank),
            check(report.saturated),
            check(report.unimodular_pairing)
        ));
        r.line(format!("basis = {}", y));
        r.code = if report.is_lagrangian() { EXIT_OK } else { EXIT_FALSE };
        r.put("pair", name);
        r.put("lattice_only", lattice);
        r.put("lagrangian", report.is_lagrangian());
        r.put(
            "checks",
            json!({
                "isotropic": report.isotropic, "half_rank": report.half_rank,
                "saturated": report.saturated, "unimodular_pairing": report.unimodular_pairing,
            }),
        );
        Ok(r)
    }

    fn generators(&self, a: &str, bound: u32) -> Result<Report, Failure> {
        let a = self.torus(a)?;
        let gens = symplectic::sp_generators(&a, bound)?;
        let mut r = Report::default();
        r.line(format!("generators of Sp({} x {}^), bound {}: {}", a.name(), a.name(), bound, gens.len()));
        for (k, g) in gens.iter().enumerate() {
            r.line(format!("  g{} = {}", k, g.rho()));
        }
        r.put("torus", a.name());
        r.put("bound", bound);
        r.put("count", gens.len());
        r.put("generators", gens.iter().map(|g| mat(g.rho())).collect::<Vec<_>>());
        Ok(r)
    }

    fn classify(&self, name: &str) -> Result<Report, Failure> {
        let f = self.block_iso(name)?;
        let t = decomp::classify(f)?;
        let mut r = Report::default();
        r.line(format!("case: {}", t.case));
        r.line(format!("division hypothesis: {}", verdict_summary(&t.division_hypothesis)));
        r.put("name", name);
        r.put("case", t.case.name());
        r.put("degree", case_degree(&t.case));
        r.put("division_hypothesis", verdict_summary(&t.division_hypothesis));
        Ok(r)
    }

    fn recipe(&self, name: &str) -> Result<Report, Failure> {
        let f = self.block_iso(name)?;
        let t = decomp::classify(f)?;
        let k = decomp::kernel_recipe_for(f, &t)?;
        let mut r = Report::default();
        r.line(format!("case: {}", t.case));
        r.line(format!("recipe: {}", k.kind.name()));
        let mut detail = Map::new();
        match &k.kind {
            RecipeKind::OrlovConstruction(b) => {
                r.line(format!(
                    "  blocks: alpha = {}, beta = {}, gamma = {}, delta = {}",
                    b.alpha, b.beta, b.gamma, b.delta
                ));
                detail.insert("blocks".into(), blocks_json(b));
            }
            RecipeKind::PoincareConjugated { inner, pre, post } => {
                r.line(format!(
                    "  inner OrlovConstruction: alpha = {}, beta = {}, gamma = {}, delta = {}",
                    inner.alpha, inner.beta, inner.gamma, inner.delta
                ));
                r.line(format!("  pre (psi_A) = {}", pre));
                r.line(format!("  post (psi_B^-1) = {}", post));
                detail.insert("inner".into(), blocks_json(inner));
                detail.insert("pre".into(), mat(pre));
                detail.insert("post".into(), mat(post));
            }
            RecipeKind::GraphKernel(alpha) => {
                r.line(format!("  graph of alpha = {}", alpha));
                detail.insert("alpha".into(), mat(alpha));
            }
        }
        r.line(format!("reconstruction: {}", k.reconstruction));
        r.line(format!("verified: {} (reconstruction = rho)", check(k.verified)));
        r.put("name", name);
        r.put("case", t.case.name());
        r.put("recipe", k.kind.name());
        r.put("detail", detail);
        r.put("reconstruction", mat(&k.reconstruction));
        r.put("verified", k.verified);
        Ok(r)
    }

    fn verify_batch(&self, a: &str, b: &str, wordlen: usize, bound: u32) -> Result<Report, Failure> {
        let (a, b) = (self.torus(a)?, self.torus(b)?);
        let report = decomp::verify_batch(&a, &b, wordlen, bound)?;
        Ok(batch_report(&a, &b, wordlen, bound, &report))
    }
}

fn batch_report(a: &ComplexTorus, b: &ComplexTorus, wordlen: usize, bound: u32, rep: &BatchReport) -> Report {
    let mut r = Report::default();
    r.line(format!("batch {} -> {}: words <= {}, generator bound {}", a.name(), b.name(), wordlen, bound));
    if let Some(note) = &rep.note {
        r.line(format!("note: {}", note));
    }
    r.line(format!("total: {}", rep.total));
    for (case, n) in &rep.counts {
        r.line(format!("  {}: {}", case, n));
    }
    r.line(format!("  NotApplicable: {}", rep.not_applicable));
    r.line(format!("violations: {}", rep.violations.len()));
    for v in &rep.violations {
        r.line(format!("  VIOLATION {}", v));
    }
    let mut entries = Vec::new();
    for e in &rep.entries {
        match &e.outcome {
            Ok((case, recipe)) => {
                r.line(format!("  {} => {}; {}", e.rho, case, recipe));
                entries.push(
                    json!({"rho": mat(&e.rho), "case": case.name(), "degree": case_degree(case), "recipe": recipe}),
                );
            }
            Err(msg) => {
                r.line(format!("  {} => {}", e.rho, msg));
                entries.push(json!({"rho": mat(&e.rho), "error": msg}));
            }
        }
    }
    r.code = if !rep.is_clean() {
        EXIT_VIOLATION
    } else if rep.note.is_some() {
        EXIT_FALSE
    } else {
        EXIT_OK
    };
    r.put("source", a.name());
    r.put("target", b.name());
    r.put("word_length", wordlen);
    r.put("bound", bound);
    r.put("total", rep.total);
    r.put("counts", rep.counts.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<Map<_, _>>());
    r.put("not_applicable", rep.not_applicable);
    r.put("violations", rep.violations.clone());
    r.put("note", rep.note.clone());
    r.put("entries", entries);
    r
}

fn case_degree(c: &decomp::Case) -> Value {
    match c {
        decomp::Case::BetaIsogeny(d) | decomp::Case::GammaIsogeny(d) => json!(d.to_string()),
        decomp::Case::GraphIso => Value::Null,
    }
}

fn block_lines(r: &mut Report, f: &BlockIso) {
    r.line(format!("alpha = {}", f.alpha().matrix()));
    r.line(format!("beta = {}", f.beta().matrix()));
    r.line(format!("gamma = {}", f.gamma().matrix()));
    r.line(format!("delta = {}", f.delta().matrix()));
    r.line(format!("rho = {}", f.rho()));
}

fn block_json(f: &BlockIso) -> Value {
    json!({
        "alpha": mat(f.alpha().matrix()), "beta": mat(f.beta().matrix()),
        "gamma": mat(f.gamma().matrix()), "delta": mat(f.delta().matrix()),
        "rho": mat(f.rho()),
    })
}

fn blocks_json(b: &decomp::Blocks) -> Value {
    json!({"alpha": mat(&b.alpha), "beta": mat(&b.beta), "gamma": mat(&b.gamma), "delta": mat(&b.delta)})
}

/// `Field (Q)`, `Field (Q[x]/(x^2 + 1))`, `QuaternionDivision (-1, -1)`, ...
pub fn verdict_summary(v: &DivisionVerdict) -> String {
    match v {
        DivisionVerdict::Field(c) if c.minimal_polynomial.degree() == Some(1) => "Field (Q)".into(),
        DivisionVerdict::Field(c) => format!("Field (Q[x]/({}))", c.minimal_polynomial),
        DivisionVerdict::QuaternionDivision(q) => format!("QuaternionDivision ({}, {})", q.a, q.b),
        DivisionVerdict::Split(q) => format!("Split ({}, {})", q.a, q.b),
        DivisionVerdict::NotDivision(_) => "NotDivision".into(),
        DivisionVerdict::Undetermined(why) => format!("Undetermined ({})", why),
    }
}

fn certificate_lines(v: &DivisionVerdict) -> Vec<String> {
    match v {
        DivisionVerdict::Field(c) => vec![format!(
            "element {} has irreducible minimal polynomial {} of full degree",
            vec_text(&c.element),
            c.minimal_polynomial
        )],
        DivisionVerdict::QuaternionDivision(q) | DivisionVerdict::Split(q) => {
            let mut out = vec![
                format!("i = {}, i^2 = {}", vec_text(&q.i), q.a),
                format!("j = {}, j^2 = {}", vec_text(&q.j), q.b),
                format!("k = ij = -ji = {}", vec_text(&q.k)),
            ];
            out.push(match q.place {
                Some(p) => format!("Hilbert symbol ({}, {})_{} = -1", q.a, q.b, p),
                None => format!("Hilbert symbol ({}, {})_v = +1 at every place", q.a, q.b),
            });
            out
        }
        DivisionVerdict::NotDivision(z) => vec![match z {
            ZeroDivisorCertificate::ReducibleMinimalPolynomial { element, minimal_polynomial, factor } => format!(
                "element {} has reducible minimal polynomial {} with factor {}",
                vec_text(element),
                minimal_polynomial,
                factor
            ),
            ZeroDivisorCertificate::ZeroDivisor { left, right } => {
                format!("{} * {} = 0", vec_text(left), vec_text(right))
            }
            ZeroDivisorCertificate::Nilpotent { element, index } => {
                format!("{}^{} = 0", vec_text(element), index)
            }
        }],
        DivisionVerdict::Undetermined(why) => vec![why.clone()],
    }
}

/// Basis file: `{"basis": [[...], ...]}`, one integer vector (as strings) per
/// spanning column.
fn load_basis(path: &PathBuf, rank: usize) -> Result<IntMatrix, Failure> {
    #[derive(serde::Deserialize)]
    #[serde(deny_unknown_fields)]
    struct BasisFile {
        basis: Vec<Vec<String>>,
    }
    let src =
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {}", path.display(), e)))?;
    let file: BasisFile =
        serde_json::from_str(&src).map_err(|e| Failure::usage(format!("{}: {}", path.display(), e)))?;
    let mut cols = Vec::with_capacity(file.basis.len());
    for (k, v) in file.basis.iter().enumerate() {
        let mut col = Vec::with_capacity(v.len());
        for (i, s) in v.iter().enumerate() {
            let x: Scalar =
                s.parse().map_err(|e| Failure::usage(format!("basis[{}][{}]: cannot parse {:?}: {}", k, i, s, e)))?;
            let n = x
                .to_rational()
                .filter(|q| q.is_integer())
                .ok_or_else(|| Failure::usage(format!("basis[{}][{}]: {} is not an integer", k, i, s)))?;
            col.push(n.to_integer());
        }
        cols.push(col);
    }
    IntMatrix::from_columns(rank, &cols).map_err(|e| Failure::usage(format!("{}: {}", path.display(), e)))
}
