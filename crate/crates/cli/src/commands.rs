use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use goe_core::algebra::IntegerMatrix;
use goe_core::homoclinic::{
    density_coverage, homoclinic_point, pre_injectivity_oracle, stable_splitting, verify_decay, SpectralSplit,
};
use goe_core::symbolic::{
    census_csv, elementary_census, even_shift, golden_mean_shift, irreducibility_and_mixing, language_words,
    moore_counterexample_search, orphan_word, periodic_point_count, pre_injective_code, sft_from_allowed_words,
    surjective_on, SlidingBlockCode, SoficPresentation,
};
use goe_core::toral::{classify_matrix, AffineToralMap, ToralSystem};

use crate::report::{CliError, Outcome};

pub struct Numerics {
    pub precision: f64,
    pub tol: f64,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Matrix files use the text format or a JSON array of rows.
pub fn load_matrix(path: &Path) -> Result<IntegerMatrix, CliError> {
    let text = read(path)?;
    if text.trim_start().starts_with('[') {
        Ok(serde_json::from_str(&text)?)
    } else {
        Ok(text.parse()?)
    }
}

/// Endomorphism files use the text format (matrix, then a translation line)
/// or JSON `{"B": rows, "c": ["1/2", ...]}`.
fn load_affine(path: &Path) -> Result<AffineToralMap, CliError> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(&text)?)
    } else {
        Ok(text.parse()?)
    }
}

fn load_code(path: &Path) -> Result<SlidingBlockCode, CliError> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn load_presentation(path: &Path) -> Result<SoficPresentation, CliError> {
    Ok(serde_json::from_str(&read(path)?)?)
}

/// `golden`, `even`, or `full:q`.
pub fn named_shift(name: &str) -> Result<SoficPresentation, CliError> {
    match name {
        "golden" => Ok(golden_mean_shift()),
        "even" => Ok(even_shift()),
        _ => match name.strip_prefix("full:").map(str::parse::<usize>) {
            Some(Ok(q)) if q >= 1 => Ok(SoficPresentation::full_shift(q)),
            _ => Err(CliError::Parse(format!("unknown shift {name:?}; use golden, even or full:q"))),
        },
    }
}

fn shift_arg(file: Option<&Path>, named: Option<&str>, fallback: &str) -> Result<(SoficPresentation, Value), CliError> {
    match (file, named) {
        (Some(_), Some(_)) => Err(CliError::Parse("give either a shift file or a named shift, not both".into())),
        (Some(path), None) => Ok((load_presentation(path)?, json!(path.display().to_string()))),
        (None, name) => {
            let name = name.unwrap_or(fallback);
            Ok((named_shift(name)?, json!(name)))
        }
    }
}

fn split_for(a: &IntegerMatrix, numerics: &Numerics) -> Result<SpectralSplit, CliError> {
    Ok(stable_splitting(a, numerics.precision)?)
}

fn yes(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

pub fn classify(matrix: &Path) -> Result<Outcome, CliError> {
    let a = load_matrix(matrix)?;
    let c = classify_matrix(&a)?;
    let summary = format!(
        "χ_A = {}; det {}; hyperbolic {}; ergodic {}; {} root(s) on the unit circle",
        c.char_poly,
        c.determinant,
        yes(c.is_hyperbolic),
        yes(c.is_ergodic),
        c.unit_circle_roots
    );
    Ok(Outcome {
        inputs: json!({ "matrix_file": matrix.display().to_string(), "matrix": a }),
        verdicts: serde_json::to_value(&c)?,
        summary,
        plain: None,
    })
}

pub fn endo(matrix: &Path, endo: &Path, oracle_bound: Option<u32>, numerics: &Numerics) -> Result<Outcome, CliError> {
    let a = load_matrix(matrix)?;
    let tau = load_affine(endo)?;
    let system = ToralSystem::new(a.clone())?;
    let verdict = system.verdict(&tau)?;
    let mut verdicts = serde_json::to_value(&verdict)?;
    let mut summary = format!(
        "surjective {}; injective {}; pre-injective {}; Moore consistent {}; Myhill consistent {}",
        yes(verdict.surjective),
        yes(verdict.injective),
        verdict.pre_injective.map_or("unknown", yes),
        yes(verdict.moore_consistent),
        yes(verdict.myhill_consistent)
    );
    if let Some(bound) = oracle_bound {
        if !system.classification().is_hyperbolic {
            return Err(CliError::Precondition("the homoclinic oracle needs a hyperbolic base matrix".into()));
        }
        let split = split_for(&a, numerics)?;
        let oracle = pre_injectivity_oracle(&split, &tau, bound, numerics.tol)?;
        let agrees = verdict.pre_injective == Some(oracle.pre_injective);
        summary.push_str(&format!("; oracle (K = {bound}) {}", if agrees { "agrees" } else { "DISAGREES" }));
        verdicts["oracle"] = serde_json::to_value(&oracle)?;
        verdicts["oracle_agrees"] = json!(agrees);
    }
    Ok(Outcome {
        inputs: json!({
            "matrix_file": matrix.display().to_string(),
            "endo_file": endo.display().to_string(),
            "matrix": a,
            "endo": tau,
            "oracle_bound": oracle_bound,
            "tol": numerics.tol,
            "precision": numerics.precision,
        }),
        verdicts,
        summary,
        plain: None,
    })
}

fn check_index(k: &[i64], dim: usize) -> Result<(), CliError> {
    if k.len() == dim {
        Ok(())
    } else {
        Err(CliError::Precondition(format!("index has {} entries, matrix dimension is {dim}", k.len())))
    }
}

pub fn homoclinic_sample(matrix: &Path, k: &[i64], horizon: u32, numerics: &Numerics) -> Result<Outcome, CliError> {
    let a = load_matrix(matrix)?;
    check_index(k, a.dim())?;
    let split = split_for(&a, numerics)?;
    let sample = homoclinic_point(&split, k)?;
    let decays = verify_decay(&split, &sample, horizon, numerics.tol)?;
    let summary = format!("h_{k:?} = {:?}; decay over ±{horizon} steps {}", sample.point, yes(decays));
    Ok(Outcome {
        inputs: json!({
            "matrix_file": matrix.display().to_string(),
            "matrix": a,
            "k": k,
            "horizon": horizon,
            "tol": numerics.tol,
            "precision": numerics.precision,
        }),
        verdicts: json!({ "sample": sample, "decays": decays, "split": split }),
        summary,
        plain: None,
    })
}

pub fn homoclinic_coverage(matrix: &Path, bound: u32, grid: u32, numerics: &Numerics) -> Result<Outcome, CliError> {
    let a = load_matrix(matrix)?;
    let split = split_for(&a, numerics)?;
    let coverage = density_coverage(&split, bound, grid)?;
    let summary = format!("{:.4} of {grid}^{} grid cells hit with ‖k‖∞ ≤ {bound}", coverage.coverage, a.dim());
    Ok(Outcome {
        inputs: json!({
            "matrix_file": matrix.display().to_string(),
            "matrix": a,
            "bound": bound,
            "grid": grid,
            "precision": numerics.precision,
        }),
        verdicts: serde_json::to_value(&coverage)?,
        summary,
        plain: None,
    })
}

pub struct DecayRequest<'a> {
    pub k: Option<&'a [i64]>,
    pub samples: usize,
    pub bound: i64,
    pub horizon: u32,
    pub seed: u64,
}

pub fn homoclinic_decay(matrix: &Path, request: &DecayRequest, numerics: &Numerics) -> Result<Outcome, CliError> {
    let a = load_matrix(matrix)?;
    let split = split_for(&a, numerics)?;
    let indices: Vec<Vec<i64>> = match request.k {
        Some(k) => {
            check_index(k, a.dim())?;
            vec![k.to_vec()]
        }
        None => {
            if request.bound < 0 {
                return Err(CliError::Precondition("bound must be non-negative".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(request.seed);
            (0..request.samples)
                .map(|_| (0..a.dim()).map(|_| rng.random_range(-request.bound..=request.bound)).collect())
                .collect()
        }
    };
    let mut results = Vec::with_capacity(indices.len());
    for k in &indices {
        let sample = homoclinic_point(&split, k)?;
        let decays = verify_decay(&split, &sample, request.horizon, numerics.tol)?;
        results.push(json!({ "k": k, "point": sample.point, "decays": decays }));
    }
    let passed = results.iter().filter(|r| r["decays"] == json!(true)).count();
    Ok(Outcome {
        inputs: json!({
            "matrix_file": matrix.display().to_string(),
            "matrix": a,
            "k": request.k,
            "samples": if request.k.is_some() { 1 } else { request.samples },
            "bound": request.bound,
            "horizon": request.horizon,
            "tol": numerics.tol,
            "precision": numerics.precision,
        }),
        verdicts: json!({ "all_decay": passed == results.len(), "results": results }),
        summary: format!("{passed} of {} samples decay over ±{} steps", results.len(), request.horizon),
        plain: None,
    })
}

pub fn ca_census() -> Result<Outcome, CliError> {
    let rows = elementary_census()?;
    let surjective = rows.iter().filter(|r| r.surjective).count();
    let disagreements: Vec<u8> = rows.iter().filter(|r| r.surjective != r.pre_injective).map(|r| r.rule).collect();
    Ok(Outcome {
        inputs: json!({ "rules": "elementary 0..=255" }),
        verdicts: json!({
            "rows": rows,
            "surjective_count": surjective,
            "columns_agree": disagreements.is_empty(),
            "disagreements": disagreements,
        }),
        summary: format!(
            "{surjective} of 256 rules surjective; columns {}",
            if disagreements.is_empty() { "agree" } else { "DISAGREE" }
        ),
        plain: Some(census_csv(&rows)),
    })
}

pub fn ca_check(code_file: &Path, shift_file: Option<&Path>, named: Option<&str>) -> Result<Outcome, CliError> {
    let code = load_code(code_file)?;
    let default_shift = format!("full:{}", code.alphabet_in());
    let (shift, shift_input) = shift_arg(shift_file, named, &default_shift)?;
    let surjective = surjective_on(&code, &shift)?;
    let pre = pre_injective_code(&code, &shift)?;
    let orphan = if shift.is_deterministic() && shift.state_count() == 1 { orphan_word(&code)? } else { None };
    let agree = surjective == pre.pre_injective;
    Ok(Outcome {
        inputs: json!({ "code_file": code_file.display().to_string(), "code": code, "shift": shift_input }),
        verdicts: json!({
            "surjective": surjective,
            "pre_injective": pre.pre_injective,
            "agree": agree,
            "erasable_pair": pre.witness,
            "orphan": orphan,
        }),
        summary: format!(
            "surjective {}; pre-injective {}; {}",
            yes(surjective),
            yes(pre.pre_injective),
            if agree { "Garden of Eden equivalence holds" } else { "Garden of Eden equivalence FAILS" }
        ),
        plain: None,
    })
}

pub fn ca_moore_search(radius: usize, shift_file: Option<&Path>, named: Option<&str>) -> Result<Outcome, CliError> {
    let (shift, shift_input) = shift_arg(shift_file, named, "even")?;
    let found = moore_counterexample_search(&shift, radius)?;
    let summary = match &found {
        Some(w) => format!(
            "radius {}: candidate #{} is surjective but not pre-injective (after {} candidates)",
            w.radius, w.candidate_index, w.candidates_checked
        ),
        None => format!("no surjective, non-pre-injective code up to radius {radius}"),
    };
    Ok(Outcome {
        inputs: json!({ "radius": radius, "shift": shift_input }),
        verdicts: json!({ "found": found.is_some(), "witness": found }),
        summary,
        plain: None,
    })
}

#[derive(serde::Deserialize, serde::Serialize)]
struct SftSpec {
    alphabet: usize,
    window: usize,
    allowed: Vec<Vec<usize>>,
}

pub fn sft_build(spec_file: Option<&Path>, named: Option<&str>) -> Result<Outcome, CliError> {
    let (pres, input) = match (spec_file, named) {
        (Some(path), None) => {
            let spec: SftSpec = serde_json::from_str(&read(path)?)?;
            let pres = sft_from_allowed_words(spec.alphabet, spec.window, &spec.allowed)?;
            (pres, json!({ "spec_file": path.display().to_string(), "spec": spec }))
        }
        (None, Some(name)) => (named_shift(name)?, json!({ "named": name })),
        _ => return Err(CliError::Parse("give exactly one of an SFT description file or --named".into())),
    };
    let mixing = irreducibility_and_mixing(&pres);
    Ok(Outcome {
        inputs: input,
        summary: format!(
            "{} states, {} edges; irreducible {}; mixing {}",
            pres.state_count(),
            pres.edges().len(),
            yes(mixing.irreducible),
            yes(mixing.mixing)
        ),
        verdicts: json!({ "presentation": pres, "mixing": mixing }),
        plain: None,
    })
}

pub fn sft_props(
    file: Option<&Path>,
    named: Option<&str>,
    max_period: usize,
    max_word_len: usize,
) -> Result<Outcome, CliError> {
    let (pres, shift_input) = match (file, named) {
        (None, None) => return Err(CliError::Parse("give a presentation file or --named".into())),
        _ => shift_arg(file, named, "")?,
    };
    let mixing = irreducibility_and_mixing(&pres);
    let periodic = (1..=max_period)
        .map(|p| Ok(json!({ "period": p, "points": periodic_point_count(&pres, p)?.to_string() })))
        .collect::<Result<Vec<_>, CliError>>()?;
    let words: Vec<usize> = (1..=max_word_len).map(|len| language_words(&pres, len).len()).collect();
    Ok(Outcome {
        inputs: json!({ "shift": shift_input, "max_period": max_period, "max_word_len": max_word_len }),
        summary: format!(
            "{} states; deterministic {}; irreducible {}; mixing {}; period {}",
            pres.state_count(),
            yes(pres.is_deterministic()),
            yes(mixing.irreducible),
            yes(mixing.mixing),
            mixing.period.map_or("-".into(), |p| p.to_string())
        ),
        verdicts: json!({
            "states": pres.state_count(),
            "edges": pres.edges().len(),
            "deterministic": pres.is_deterministic(),
            "mixing": mixing,
            "periodic_points": periodic,
            "word_counts": words,
        }),
        plain: None,
    })
}
