use std::io::Write;
use std::path::{Path, PathBuf};

use super::document::{DgCategoryDoc, Document};
use super::report::{Check, Report, Verdict};
use super::{Cli, Command, DgCmd, GsCmd, HopfCmd, NerveCmd, PipelineCmd, TetraCmd};
use crate::cochain::{lambda_complex, lambda_maps};
use crate::dgcat::{
    contractible_pair_algebra, generalized_quotient, psi_comparison, two_object_example, two_object_pcat, validate_dg_category,
    DgCat, PCat, QuotientOptions,
};
use crate::error::Error;
use crate::gscomplex::{deformation_oracle, gs_cohomology, GsBicomplex};
use crate::hopf::{builtin, random_basis_change, validate_bialgebra, validate_hopf, AxiomFailure, Bialgebra, HopfAlgebra, HopfJson};
use crate::linalg::Space;
use crate::monoidal2::{braiding, compare_products, eckmann_hilton, exactness_check, multiplication_sequence, split_sequence, Variant};
use crate::simplicial::{
    absorbing_monoidal, chaotic_monoidal, deligne_pipeline, leinster_nerve, trivial_monoidal, validate_leinster, Classification,
    DgAlgebra, DgAlgebraJson, LeinsterReport, PipelineOptions, StrictMonoidalJson,
};
use crate::tetra::{
    free_tetramodule, fundamental_decomposition, generator_factorization, left_hopf_module, regular_tetramodule, tetra_decomposition_report,
    validate_tetramodule, BaseRef, TetraJson, Tetramodule,
};

/// Errors in the input itself (bad names, unreadable files) are usage errors.
fn input<T>(r: Result<T, Error>) -> Result<T, Error> {
    r.map_err(|e| match e {
        Error::Parse(_) | Error::Usage(_) => e,
        other => Error::Parse(other.to_string()),
    })
}

fn failures_check(name: &str, failures: &[String]) -> Check {
    let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
    let more = if failures.len() > 5 { format!(" (+{} more)", failures.len() - 5) } else { String::new() };
    Check::new(name, Verdict::of(failures.is_empty())).details(format!("{}{more}", shown.join("; "))).number("failures", failures.len())
}

fn axiom_lines(f: &[AxiomFailure]) -> Vec<String> {
    f.iter().map(|a| format!("{}: {}", a.axiom, a.detail)).collect()
}

fn hopf_from(doc: Document) -> Result<(Bialgebra, Option<HopfAlgebra>), Error> {
    match doc {
        Document::Hopf(j) if j.antipode.is_some() => {
            let h = input(j.to_hopf())?;
            Ok((h.bialgebra.clone(), Some(h)))
        }
        Document::Hopf(j) => Ok((input(j.to_bialgebra())?, None)),
        other => Err(Error::Parse(format!("expected a hopf or bialgebra file, found kind {:?}", other.kind()))),
    }
}

/// A file path when one exists, otherwise a builtin name.
fn hopf_source(s: &str) -> Result<(Bialgebra, Option<HopfAlgebra>), Error> {
    if Path::new(s).exists() {
        hopf_from(Document::read(Path::new(s))?)
    } else {
        let h = builtin(s).map_err(|e| Error::Usage(e.to_string()))?;
        Ok((h.bialgebra.clone(), Some(h)))
    }
}

fn tetra_from(path: &Path) -> Result<(Tetramodule, Option<HopfAlgebra>), Error> {
    match Document::read(path)? {
        Document::Tetramodule(j) => input(j.to_tetramodule()),
        other => Err(Error::Parse(format!("{}: expected a tetramodule, found kind {:?}", path.display(), other.kind()))),
    }
}

fn need_hopf(h: Option<HopfAlgebra>, what: &str) -> Result<HopfAlgebra, Error> {
    h.ok_or_else(|| Error::Unavailable(format!("{what} needs an antipode; the base has none")))
}

fn pcat_from(file: &Option<PathBuf>, default: impl FnOnce() -> PCat) -> Result<PCat, Error> {
    match file {
        None => Ok(default()),
        Some(p) => match Document::read(p)? {
            Document::DgCategory(d) => input(d.to_pcat()),
            other => Err(Error::Parse(format!("{}: expected a dg-category, found kind {:?}", p.display(), other.kind()))),
        },
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Option<Report>, Error> {
    match &cli.command {
        Command::Hopf(c) => hopf(c).map(Some),
        Command::Tetra(c) => tetra(c, cli.seed).map(Some),
        Command::Gs(c) => gs(c, cli.seed).map(Some),
        Command::Dg(c) => dg(c).map(Some),
        Command::Nerve(c) => nerve(c).map(Some),
        Command::Pipeline(c) => pipeline(c).map(Some),
        Command::Example { name, emit } => {
            let doc = example(name)?;
            match emit {
                Some(path) => {
                    std::fs::write(path, doc.to_json())?;
                    let mut r = Report::new(format!("example {name}"));
                    r.push(Check::new("emitted", Verdict::Info).details(path.display().to_string()));
                    Ok(Some(r))
                }
                None => {
                    out.write_all(doc.to_json().as_bytes())?;
                    Ok(None)
                }
            }
        }
    }
}

pub fn example(name: &str) -> Result<Document, Error> {
    let tetra = |prefix: &str, regular: bool| -> Option<Result<Document, Error>> {
        let base = name.strip_prefix(prefix)?;
        Some(builtin(base).map_err(|e| Error::Usage(e.to_string())).map(|h| {
            let t = if regular {
                regular_tetramodule(&h.bialgebra)
            } else {
                free_tetramodule(&h.bialgebra, &Space::numbered("w", 1))
            };
            Document::Tetramodule(TetraJson::new(&t, BaseRef::Builtin(base.to_string())))
        }))
    };
    if let Some(d) = tetra("free-tetramodule:", false) {
        return d;
    }
    if let Some(d) = tetra("regular-tetramodule:", true) {
        return d;
    }
    Ok(match name {
        "two-object" => Document::DgCategory(DgCategoryDoc::new(&two_object_example(), &[vec![1]])),
        "contractible-pair" => Document::DgCategory(DgCategoryDoc::new(&contractible_pair_algebra(), &[])),
        "dual-numbers" => Document::DgAlgebra(DgAlgebraJson::new(&DgAlgebra::dual_numbers())),
        "trivial-monoidal" => Document::Monoidal(StrictMonoidalJson::new(&trivial_monoidal(), &[])),
        "absorbing-monoidal" => Document::Monoidal(StrictMonoidalJson::new(&absorbing_monoidal(), &[1])),
        "chaotic-monoidal" => Document::Monoidal(StrictMonoidalJson::new(&chaotic_monoidal(), &[1])),
        other => {
            let h = builtin(other).map_err(|_| Error::Usage(format!("unknown example {other:?}")))?;
            Document::Hopf(HopfJson::from(&h))
        }
    })
}

fn hopf_report(subject: String, b: &Bialgebra, h: Option<&HopfAlgebra>) -> Report {
    let mut r = Report::new(subject);
    r.push(Check::new("dimension", Verdict::Info).number("dim", b.dim()));
    r.push(failures_check("bialgebra axioms", &axiom_lines(&validate_bialgebra(b))));
    if let Some(h) = h {
        let f: Vec<AxiomFailure> = validate_hopf(h).into_iter().filter(|a| a.axiom.contains("antipode")).collect();
        r.push(failures_check("antipode axioms", &axiom_lines(&f)));
        let s2 = h.antipode_squared().same_entries(&b.identity());
        r.push(Check::new("S² = id", Verdict::Info).details(s2.to_string()));
    }
    r
}

fn hopf(c: &HopfCmd) -> Result<Report, Error> {
    match c {
        HopfCmd::Check { file } => {
            let (b, h) = hopf_from(Document::read(file)?)?;
            Ok(hopf_report(format!("hopf check {}", file.display()), &b, h.as_ref()))
        }
        HopfCmd::Builtin { name, emit } => {
            let h = builtin(name).map_err(|e| Error::Usage(e.to_string()))?;
            let mut r = hopf_report(format!("hopf builtin {name}"), &h.bialgebra, Some(&h));
            if let Some(path) = emit {
                let path = if path.as_os_str().is_empty() { PathBuf::from(format!("{name}.json")) } else { path.clone() };
                std::fs::write(&path, Document::Hopf(HopfJson::from(&h)).to_json())?;
                r.push(Check::new("emitted", Verdict::Info).details(path.display().to_string()));
            }
            Ok(r)
        }
    }
}

fn tetra(c: &TetraCmd, seed: u64) -> Result<Report, Error> {
    match c {
        TetraCmd::Check { file } => {
            let (t, _) = tetra_from(file)?;
            let mut r = Report::new(format!("tetra check {}", file.display()));
            r.push(Check::new("dimensions", Verdict::Info).number("base", t.base().dim()).number("module", t.dim()));
            r.push(failures_check("tetramodule axioms", &axiom_lines(&validate_tetramodule(&t))));
            Ok(r)
        }
        TetraCmd::Tensor { left, right } => {
            let (m, h) = tetra_from(left)?;
            let (n, _) = tetra_from(right)?;
            let h = need_hopf(h, "comparing products")?;
            let p = compare_products(&m, &n, &h)?;
            let mut r = Report::new(format!("tetra tensor {} {}", left.display(), right.display()));
            r.push(
                Check::new("dim M⊗₁N = dim M⊗₂N", Verdict::of(p.products_agree))
                    .number("dim_1", p.dim_product_1)
                    .number("dim_2", p.dim_product_2),
            );
            r.push(
                Check::new("dim = (dim B)²·dim M₀·dim N₀", Verdict::of(p.prediction_holds))
                    .number("predicted", p.predicted)
                    .number("dim_m0", p.dim_m0)
                    .number("dim_n0", p.dim_n0),
            );
            r.push(Check::new("isomorphism M⊗₂N → M⊗₁N", Verdict::of(p.isomorphism_found)).number("rank_canonical", p.rank_canonical));
            let _ = seed;
            Ok(r)
        }
        TetraCmd::Decompose { file } => {
            let (t, h) = tetra_from(file)?;
            let h = need_hopf(h, "the decomposition")?;
            let full = tetra_decomposition_report(&t, &h)?;
            let d = &full.report;
            let mut r = Report::new(format!("tetra decompose {}", file.display()));
            r.push(
                Check::new("antipode recipe inverts B⊗M₀⊗B → M", Verdict::Info)
                    .details(d.recipe_inverts_phi.to_string())
                    .number("dim_coinvariants", d.dim_coinvariants)
                    .number("rank_phi", d.rank_phi)
                    .number("source_dim", d.source_dim),
            );
            if !d.recipe_inverts_phi {
                let g = generator_factorization(&t, &full).map(|g| g.coinvariants.space.dim());
                let text = g.map_or("none".to_string(), |k| format!("B⊗V⊗B ≅ M with dim V = {k}"));
                r.push(Check::new("factorization through generators", Verdict::Info).details(text));
            }
            let one = fundamental_decomposition(&left_hopf_module(&t, &h)?)?.report;
            r.push(
                Check::new("M ≅ B⊗M^coB (left Hopf module)", Verdict::of(one.passed))
                    .number("dim_coinvariants", one.dim_coinvariants)
                    .details(format!("αβ = id: {}, βα = id: {}", one.alpha_beta_identity, one.beta_alpha_identity)),
            );
            Ok(r)
        }
        TetraCmd::EhCheck { files, free } => {
            let (ms, h) = match files.len() {
                4 => {
                    let loaded = files.iter().map(|f| tetra_from(f)).collect::<Result<Vec<_>, _>>()?;
                    let h = need_hopf(loaded[0].1.clone(), "the braiding")?;
                    (loaded.into_iter().map(|(t, _)| t).collect::<Vec<_>>(), h)
                }
                0 => {
                    let h = builtin(free).map_err(|e| Error::Usage(e.to_string()))?;
                    let t = free_tetramodule(&h.bialgebra, &Space::numbered("w", 1));
                    (vec![t.clone(), t.clone(), t.clone(), t], h)
                }
                n => return Err(Error::Usage(format!("eh-check takes four tetramodule files or none, got {n}"))),
            };
            let mut r = Report::new(if files.is_empty() { format!("tetra eh-check (free over {free})") } else { "tetra eh-check".into() });
            let br = braiding(&ms[1], &ms[2], &h)?.report;
            r.push(Check::new("λ′∘λ′ = id", Verdict::of(br.lambda_prime_involution)));
            if let Some(sq) = br.lambda_squared_identity {
                r.push(Check::new("λ∘λ = id", Verdict::Info).details(sq.to_string()));
            }
            let (_, eh) = eckmann_hilton(&ms[0], &ms[1], &ms[2], &ms[3], &h)?;
            r.push(
                Check::new("η invertible", Verdict::of(eh.invertible))
                    .details(eh.reason.unwrap_or_default())
                    .number("dim_source", eh.dim_source)
                    .number("dim_target", eh.dim_target)
                    .number("rank", eh.rank),
            );
            if eh.available {
                let literal = eh.literal_well_defined.map_or("no braiding".to_string(), |b| b.to_string());
                r.push(Check::new("id ⊗₁ λ ⊗₁ id well defined", Verdict::Info).details(literal));
                r.push(Check::new("η is a tetramodule map", Verdict::Info).details(eh.tetramodule_map.to_string()));
            }
            Ok(r)
        }
        TetraCmd::Exactness { file, split } => {
            let (n, _) = tetra_from(file)?;
            let ses = match split {
                Some(v) => split_sequence(&tetra_from(&v[0])?.0, &tetra_from(&v[1])?.0)?,
                None => multiplication_sequence(n.base())?,
            };
            let defects = ses.defects();
            let mut r = Report::new(format!("tetra exactness {}", file.display()));
            r.push(failures_check("input sequence is exact", &defects));
            if !defects.is_empty() {
                return Ok(r);
            }
            let splits = ses.splitting()?.is_some();
            r.push(Check::new("sequence splits", Verdict::Info).details(splits.to_string()));
            for v in [Variant::One, Variant::Two] {
                let e = exactness_check(&n, &ses, v)?;
                for s in &e.sides {
                    let q = &s.sequence;
                    r.push(
                        Check::new(format!("{v} {:?}", s.side), Verdict::of(s.maps_well_defined && s.ill_defined_products == 0 && q.exact))
                            .number("dims", format!("{}/{}/{}", q.dims.0, q.dims.1, q.dims.2))
                            .number("rank_f", q.rank_f)
                            .number("rank_g", q.rank_g),
                    );
                }
            }
            Ok(r)
        }
    }
}

fn gs(c: &GsCmd, seed: u64) -> Result<Report, Error> {
    let GsCmd::Cohomology { source, pmax, qmax, normalized, oracle, conjugate } = c;
    let (b, _) = hopf_source(source)?;
    let g = GsBicomplex::new(&b, *pmax, *qmax)?;
    let mut r = Report::new(format!("gs cohomology {source} (p ≤ {pmax}, q ≤ {qmax})"));
    r.push(failures_check("bicomplex identities", &g.identity_failures()));
    let h = gs_cohomology(&g, *normalized);
    let mut check = Check::new("H^n", Verdict::Info);
    for (n, d) in &h.dims {
        check = check.number(&format!("H{n}"), d);
    }
    r.push(check);
    if *normalized {
        r.push(Check::new("normalized cochains form a subcomplex", Verdict::of(h.subcomplex_closed)));
    }
    if *oracle {
        match h.dims.get(&2) {
            Some(&d) => {
                let o = deformation_oracle(&b);
                r.push(Check::new("H² = deformation count", Verdict::of(d == o.dim)).number("H2", d).number("oracle", o.dim));
            }
            None => r.push(Check::new("H² = deformation count", Verdict::Info).details("degree 2 not in the window (needs p, q ≤ 3)")),
        }
    }
    if *conjugate {
        let p = random_basis_change(b.space(), seed);
        let b2 = b.conjugate(&p)?;
        let h2 = gs_cohomology(&GsBicomplex::new(&b2, *pmax, *qmax)?, *normalized);
        r.push(Check::new("invariant under change of basis", Verdict::of(h2.dims == h.dims)).number("seed", seed));
    }
    Ok(r)
}

fn window_or(w: Option<(i64, i64)>, default: (i64, i64)) -> (i64, i64) {
    w.unwrap_or(default)
}

fn dg(c: &DgCmd) -> Result<Report, Error> {
    match c {
        DgCmd::Quotient { file, window, level_cap } => {
            let p = pcat_from(file, || two_object_pcat(1))?;
            let w = window_or(window.window, (-6, 0));
            let q = generalized_quotient(&p, QuotientOptions { window: w, level_cap: *level_cap })?;
            let mut r = Report::new(format!("dg quotient, window {}:{}", w.0, w.1));
            let v: Vec<String> = validate_dg_category(&q).iter().map(|v| format!("{}: {}", v.law, v.detail)).collect();
            r.push(failures_check("quotient is a dg category", &v));
            let names = q.objects();
            for x in 0..names.len() {
                for y in 0..names.len() {
                    let hom = q.hom(x, y);
                    let mut check = Check::new(format!("H Hom({}, {})", names[x], names[y]), Verdict::Info);
                    for n in w.0..=w.1 {
                        let d = hom.cohomology_dim(n);
                        if d > 0 {
                            check = check.number(&format!("H{n}"), d);
                        }
                    }
                    r.push(check.number("cochains", hom.total_dim()));
                }
            }
            Ok(r)
        }
        DgCmd::Lambda { max } => {
            let mut r = Report::new(format!("dg lambda, n ≤ {max}"));
            for n in 1..=*max {
                let c = lambda_complex(n)?;
                let acyclic = c.components().keys().all(|&d| c.cohomology_dim(d) == 0);
                r.push(Check::new(format!("Λ({n}) acyclic"), Verdict::of(acyclic)).number("dim", c.total_dim()));
            }
            for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                let l = lambda_maps(n, m)?.report;
                let ok = l.beta_quasi_iso && l.psi_quasi_iso && l.sigma_quasi_iso && l.triangle_commutes;
                r.push(Check::new(format!("σ∘(Ψ⊗Ψ)∘β = Ψ for ({n}, {m})"), Verdict::of(ok)));
            }
            Ok(r)
        }
        DgCmd::PsiCheck { file, window } => {
            let p = pcat_from(file, || two_object_pcat(2))?;
            let w = window_or(window.window, (-5, 0));
            let cmp = psi_comparison(&p, w)?;
            let mut r = Report::new(format!("dg psi-check, window {}:{}", w.0, w.1));
            for h in &cmp.report.homs {
                r.push(Check::new(format!("Hom({}, {})", h.source, h.target), Verdict::of(h.report.is_quasi_iso)));
            }
            r.push(Check::new("quasi-equivalence", Verdict::of(cmp.report.passed)));
            Ok(r)
        }
    }
}

fn leinster_checks(r: &mut Report, l: &LeinsterReport) {
    r.push(
        Check::new("functoriality", Verdict::of(l.functoriality.is_empty()))
            .details(l.functoriality.iter().take(3).cloned().collect::<Vec<_>>().join("; "))
            .number("morphisms", l.morphisms)
            .number("composable_pairs", l.composable_pairs),
    );
    r.push(failures_check("multiplicativity", &l.multiplicativity));
    r.push(failures_check("coherence", &l.coherence));
    for v in &l.colax {
        r.push(Check::new(format!("β_{{{},{}}} quasi-iso in window", v.m, v.n), Verdict::of(v.report.is_quasi_iso)));
    }
    r.push(Check::new("α quasi-iso", Verdict::of(l.alpha.is_quasi_iso)));
    let class = match l.classification {
        Classification::Monoid => "monoid",
        Classification::PreMonoid => "pre-monoid",
        Classification::Invalid => "invalid",
    };
    r.push(Check::new("classification", Verdict::Info).details(class));
}

fn nerve(c: &NerveCmd) -> Result<Report, Error> {
    let NerveCmd::Check { file, levels, window } = c;
    let a = match Document::read(file)? {
        Document::DgAlgebra(j) => input(j.to_algebra())?,
        other => return Err(Error::Parse(format!("{}: expected a dg-algebra, found kind {:?}", file.display(), other.kind()))),
    };
    let w = window_or(window.window, (-4, 4));
    let mut r = Report::new(format!("nerve check {}, levels ≤ {levels}", file.display()));
    let failures = a.validate();
    r.push(failures_check("dg algebra axioms", &failures));
    if !failures.is_empty() {
        return Ok(r);
    }
    let p = leinster_nerve(&a, *levels)?;
    let mut dims = Check::new("levels", Verdict::Info);
    for (n, l) in p.levels.iter().enumerate() {
        dims = dims.number(&format!("dim X{n}"), l.total_dim());
    }
    r.push(dims);
    leinster_checks(&mut r, &validate_leinster(&p, w));
    Ok(r)
}

fn pipeline(c: &PipelineCmd) -> Result<Report, Error> {
    let PipelineCmd::Run { file, nmax, window, level_cap } = c;
    let (m, ideal) = match Document::read(file)? {
        Document::Monoidal(j) => input(j.build())?,
        other => {
            return Err(Error::Parse(format!("{}: expected a monoidal-dg-category, found kind {:?}", file.display(), other.kind())))
        }
    };
    let w = window_or(window.window, (-6, 0));
    let out = deligne_pipeline(&m, &ideal, PipelineOptions { nmax: *nmax, window: w, level_cap: *level_cap })?;
    let mut r = Report::new(format!("pipeline run {}, nmax {nmax}, window {}:{}", file.display(), w.0, w.1));
    for (n, (base, h)) in out.summary.basepoints.iter().zip(&out.summary.cohomology).enumerate() {
        let mut check = Check::new(format!("H End({base})"), Verdict::Info).number("level", n);
        for (d, k) in h {
            if *k > 0 {
                check = check.number(&format!("H{d}"), k);
            }
        }
        r.push(check);
    }
    r.push(Check::new("tensor cohomology exact in window", Verdict::Info).details(out.summary.tensor_exact.to_string()));
    leinster_checks(&mut r, &out.report);
    Ok(r)
}
