use crate::config::Setting;
use crate::error::{Error, Result};
use crate::repcat::Word;
use crate::report::{CheckResult, Report};
use crate::scalar::Scalar;
use crate::tl::TemperleyLieb;

use super::*;

fn words<S: Scalar>(p: &PairSetting<S>, texts: &[String], field: &str) -> Result<Vec<Word>> {
    p.words(texts).map_err(|e| Error::Config(format!("corpus.{field}"), format!("{}: {e}", p.label)))
}

fn labelled(cs: Vec<CheckResult>, label: &str) -> Vec<CheckResult> {
    cs.into_iter()
        .map(|mut c| {
            c.item = format!("{label}: {}", c.item);
            c
        })
        .collect()
}

fn seqs_of<S: Scalar>(set: &Setting<S>, p: &PairSetting<S>) -> Result<Vec<Vec<Word>>> {
    if set.corpus.sequences.is_empty() {
        Ok(sequences(&words(p, &set.corpus.letters, "letters")?, set.corpus.max_len))
    } else {
        set.corpus.sequences.iter().map(|s| words(p, s, "sequences")).collect()
    }
}

/// Checks of one suite over every matching definition in the setting.
/// Configuration mistakes surface as `Error::Config`; any other error from a
/// check becomes a failed line.
pub fn run_suite<S: Scalar>(name: &str, set: &Setting<S>) -> Result<Vec<CheckResult>> {
    let seed = set.seed;
    let c = &set.corpus;
    let mut out = Vec::new();
    let mut per_pair = |f: &dyn Fn(&PairSetting<S>) -> Result<Vec<CheckResult>>| -> Result<()> {
        for p in &set.pairs {
            match f(p) {
                Ok(cs) => out.extend(labelled(cs, &p.label)),
                Err(e @ Error::Config(..)) => return Err(e),
                Err(e) => out.push(CheckResult::new("suite ran", name, p.label.clone(), false, f64::INFINITY).with_note(e.to_string())),
            }
        }
        Ok(())
    };
    match name {
        "conjugate" => {
            per_pair(&|p| group_conjugate_suite(&p.cat))?;
            for t in &set.tl {
                out.extend(labelled(tl_conjugate_suite(&TemperleyLieb::new(t.variant, t.d.clone()))?, &t.id));
            }
        }
        "tl" => {
            for t in &set.tl {
                if let Some(f) = &t.f {
                    out.extend(labelled(tl_suite(t.variant, t.d.clone(), f)?, &t.id));
                }
            }
        }
        "quasitensor" | "appendix" => per_pair(&|p| {
            let objs = words(p, &c.objects, "objects")?;
            let src = if c.arrow_objects.is_empty() { objs.clone() } else { words(p, &c.arrow_objects, "arrow_objects")? };
            let arrows = arrow_corpus(p.cat.as_ref(), &src, c.arrows, seed)?;
            if name == "quasitensor" {
                quasitensor_suite(p, &objs, &arrows)
            } else {
                appendix_suite(p, &objs, &arrows)
            }
        })?,
        "positivity" => per_pair(&|p| positivity_suite(&p.context()?, &p.cat, &words(p, &c.objects, "objects")?, c.elements, seed))?,
        "swan" => per_pair(&|p| swan_suite(&p.context()?, &p.cat, &words(p, &c.objects, "objects")?, c.elements, seed))?,
        "spectral" => per_pair(&|p| spectral_suite(p))?,
        "quotient" => per_pair(&|p| quotient_suite(&p.context()?, &p.cat, &words(p, &c.objects, "objects")?))?,
        "fullness" => per_pair(&|p| fullness_suite(&p.context()?, &seqs_of(set, p)?, c.elements, seed))?,
        "ind" => per_pair(&|p| ind_suite(p, &p.context()?, &words(p, &c.letters, "letters")?, c.max_len))?,
        "products" => per_pair(&|p| {
            let pairs = c
                .products
                .iter()
                .map(|(a, b)| Ok((p.word(a)?, p.word(b)?)))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Config("corpus.products".into(), e.to_string()))?;
            products_suite(&p.context()?, &pairs, c.elements, seed)
        })?,
        "frobenius" => per_pair(&|p| frobenius_suite(p, &p.context()?, &seqs_of(set, p)?))?,
        "eigenmatrix" => {
            for a in &set.actions {
                out.extend(labelled(eigenmatrix_suite(&a.action, &a.irreps, 16, seed)?, &a.id));
            }
        }
        "induced" => {
            for d in &set.induced {
                out.extend(labelled(induced_suite(&d.system, &d.g_irreps)?, &d.id));
            }
        }
        "evaluation" => {
            for d in &set.induced {
                out.extend(labelled(evaluation_suite(&d.system, &d.g_irreps, &d.tensor_with, &d.coeffs)?, &d.id));
            }
        }
        "classify" => {
            for k in &set.classify {
                let a = &set.actions[k.action];
                let v = &a.irreps.iter().find(|(n, _)| *n == k.v).expect("resolved").1;
                let plain: Vec<_> = a.irreps.iter().map(|(_, r)| r.clone()).collect();
                out.extend(labelled(classify_suite(&k.v, v, &a.action, &plain, k.bound, seed)?.0, &a.id));
            }
        }
        "su2" => out.extend(su2_suite(&set.su2)?.0),
        other => return Err(Error::Config("suites".into(), format!("unknown suite {other}"))),
    }
    if out.is_empty() {
        out.push(CheckResult::skipped("suite has data", name, "-", "no definitions in the config feed this suite"));
    }
    Ok(out)
}

/// `run_suite` packaged as a report.
pub fn suite_report<S: Scalar>(name: &str, set: &Setting<S>, scalar: &str) -> Result<Report> {
    let mut r = Report::new(name, scalar);
    r.extend(run_suite(name, set)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin_pair;
    use crate::config::RunConfig;
    use crate::Surd;

    #[test]
    fn sequences_drop_the_unit_and_duplicates() {
        let p = PairSetting::<Surd>::from_builtin(&builtin_pair("S3", "A3").unwrap()).unwrap();
        let letters = p.words(&["triv".into(), "sgn".into(), "std".into()]).unwrap();
        // the empty sequence and 2 + 4 + 8 over {sgn, std}
        assert_eq!(sequences(&letters, 3).len(), 15);
        let arrows = arrow_corpus(p.cat.as_ref(), &letters, 20, 1).unwrap();
        assert_eq!(arrows.len(), 20);
    }

    #[test]
    fn unknown_suite_and_empty_data() {
        let set = RunConfig::default().resolve::<Surd>().unwrap();
        assert!(matches!(run_suite("nope", &set), Err(Error::Config(..))));
        let cs = run_suite("eigenmatrix", &set).unwrap();
        assert_eq!(cs.len(), 1);
        assert!(!cs[0].passed() && !cs[0].failed());
    }

    #[test]
    fn bad_corpus_word_is_a_config_error() {
        let cfg = RunConfig::from_str(
            r#"{"groups": [{"id": "S3", "builtin": "S3"}],
                "subgroups": [{"id": "A3", "parent": "S3", "builtin": "A3"}],
                "pairs": [{"id": "p", "subgroup": "A3"}],
                "corpus": {"objects": ["spin"]}}"#,
        )
        .unwrap();
        let set = cfg.resolve::<Surd>().unwrap();
        assert!(matches!(run_suite("swan", &set), Err(Error::Config(f, _)) if f == "corpus.objects"));
        assert!(run_suite("spectral", &set).unwrap().iter().all(|c| c.passed()));
    }
}
