use std::collections::BTreeMap;
use std::path::Path;

use twistkit::algebra::{IntMatrix, LaurentPoly};
use twistkit::corpus::{example, riley_knot_images, square_knot_images, square_knot_presentation};
use twistkit::diagram::{parse_braid, parse_pd, wirtinger, GroupPresentation, LinkDiagram, WirtingerPresentation};
use twistkit::reps::{
    assign_pair, extend_assignment, parse_permutations, riley_polynomial, ParabolicSeed, Representation,
    TwoBridgeData,
};
use twistkit::twisted::{analyze_wirtinger, analyze_words, InvariantBundle, TwistedModulePresentation};

use crate::args::{InputArgs, RepArgs};
use crate::error::{usage, CliError, CliResult};

/// The group a computation runs on.
pub enum Group {
    Diagram { diagram: LinkDiagram, pres: WirtingerPresentation },
    Words(GroupPresentation),
}

impl Group {
    pub fn generators(&self) -> usize {
        match self {
            Group::Diagram { pres, .. } => pres.generators,
            Group::Words(p) => p.generators,
        }
    }

    pub fn names(&self) -> Vec<String> {
        match self {
            Group::Diagram { pres, .. } => (0..pres.generators).map(|i| format!("x{i}")).collect(),
            Group::Words(p) => p.names.clone(),
        }
    }

    pub fn abelianization(&self) -> (&[usize], usize) {
        match self {
            Group::Diagram { pres, .. } => (&pres.abelianization, pres.components),
            Group::Words(p) => (&p.abelianization, p.components),
        }
    }
}

pub struct Resolved {
    pub group: Group,
    pub two_bridge: Option<TwoBridgeData>,
    pub label: String,
}

pub struct Analysis {
    pub resolved: Resolved,
    pub rep: Representation,
    pub seed: Option<ParabolicSeed>,
    pub tp: TwistedModulePresentation,
    pub bundle: InvariantBundle,
}

pub fn parse_two_bridge(text: &str) -> CliResult<TwoBridgeData> {
    let (a, b) = text
        .split_once('/')
        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
        .ok_or_else(|| usage(format!("expected α/β, got {text:?}")))?;
    Ok(TwoBridgeData::new(a, b)?)
}

fn read_text(arg: &str) -> CliResult<String> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    } else {
        Ok(arg.to_string())
    }
}

fn with_diagram(diagram: LinkDiagram, base_arc: Option<usize>) -> CliResult<Group> {
    let diagram = match base_arc {
        Some(a) => diagram.with_base_arc(a)?,
        None => diagram,
    };
    let pres = wirtinger(&diagram);
    Ok(Group::Diagram { diagram, pres })
}

fn preset_kind(rep: &RepArgs) -> Option<&str> {
    rep.preset.as_deref().map(|p| p.split(':').next().unwrap_or("").trim())
}

pub fn resolve_input(input: &InputArgs, rep: &RepArgs) -> CliResult<Resolved> {
    let sources = [input.diagram.is_some(), input.braid.is_some(), input.example.is_some()];
    if sources.iter().filter(|&&s| s).count() > 1 {
        return Err(usage("give exactly one of --diagram, --braid, --example"));
    }
    let two_bridge = input.two_bridge.as_deref().map(parse_two_bridge).transpose()?;
    if preset_kind(rep) == Some("square") {
        if input.diagram.is_some() || input.braid.is_some() || input.example.as_deref().is_some_and(|e| !is_square(e)) {
            return Err(usage("the square preset runs on the built-in square knot presentation"));
        }
        return Ok(Resolved { group: Group::Words(square_knot_presentation()), two_bridge: None, label: "square".into() });
    }
    if let Some(text) = &input.diagram {
        let d = parse_pd(&read_text(text)?)?;
        return Ok(Resolved { group: with_diagram(d, input.base_arc)?, two_bridge, label: "diagram".into() });
    }
    if let Some(word) = &input.braid {
        let strands = input.strands.ok_or_else(|| usage("--braid needs --strands"))?;
        let d = parse_braid(word, strands)?;
        return Ok(Resolved { group: with_diagram(d, input.base_arc)?, two_bridge, label: "braid".into() });
    }
    if let Some(name) = &input.example {
        let ex = example(name)?;
        let d = ex.diagram()?;
        return Ok(Resolved {
            group: with_diagram(d, input.base_arc)?,
            two_bridge: two_bridge.or_else(|| ex.two_bridge_data()),
            label: ex.name.into(),
        });
    }
    match two_bridge {
        Some(data) => Ok(Resolved {
            group: Group::Words(data.presentation()),
            two_bridge: Some(data),
            label: format!("2-bridge {}/{}", data.alpha, data.beta),
        }),
        None => Err(usage("no input: give --diagram, --braid, --example or --two-bridge")),
    }
}

fn is_square(name: &str) -> bool {
    example(name).map(|e| e.name == "square").unwrap_or(false)
}

fn preset_numbers(spec: &str, defaults: &[i64]) -> CliResult<Vec<i64>> {
    match spec.split_once(':') {
        None => Ok(defaults.to_vec()),
        Some((_, rest)) => {
            let v: Vec<i64> = rest
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| usage(format!("bad preset parameter {s:?}"))))
                .collect::<CliResult<_>>()?;
            if v.len() != defaults.len() {
                return Err(usage(format!("preset expects {} parameters", defaults.len())));
            }
            Ok(v)
        }
    }
}

fn seed_for(spec: &str, two_bridge: Option<TwoBridgeData>) -> CliResult<ParabolicSeed> {
    if spec.trim() == "auto" {
        let data = two_bridge.ok_or_else(|| usage("--parabolic auto needs a 2-bridge example or --two-bridge"))?;
        return Ok(ParabolicSeed::new(riley_polynomial(&data)?)?);
    }
    let seed = ParabolicSeed::parse(spec)?;
    if let Some(data) = two_bridge {
        seed.check_divides(&riley_polynomial(&data)?)?;
    }
    Ok(seed)
}

pub fn resolve_rep(resolved: &Resolved, rep: &RepArgs) -> CliResult<(Representation, Option<ParabolicSeed>)> {
    let given = [rep.parabolic.is_some(), rep.perm.is_some(), rep.rep.is_some(), rep.untwisted, rep.preset.is_some()];
    match given.iter().filter(|&&g| g).count() {
        0 => return Err(usage("give one of --parabolic, --perm, --rep, --untwisted, --preset")),
        1 => {}
        _ => return Err(usage("give exactly one representation option")),
    }
    let gens = resolved.group.generators();
    if rep.untwisted {
        return Ok((Representation::identity(gens, 1), None));
    }
    if let Some(spec) = &rep.parabolic {
        let seed = seed_for(spec, resolved.two_bridge)?;
        let (x, y) = seed.parabolic_pair()?;
        let r = match &resolved.group {
            Group::Diagram { pres, .. } => assign_pair(pres, &x, &y, &seed.ring_primes())?,
            Group::Words(p) if p.generators == 2 => {
                let r = Representation::new(vec![x, y], seed.ring_primes())?;
                r.validate_words(p)?;
                r
            }
            Group::Words(_) => return Err(usage("parabolic seeds need a diagram or a 2-bridge presentation")),
        };
        return Ok((r, Some(seed)));
    }
    if let Some(spec) = &rep.perm {
        let perms = parse_permutations(spec, &resolved.group.names())?;
        return Ok((Representation::from_permutations(&perms)?, None));
    }
    if let Some(path) = &rep.rep {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let r = Representation::from_json(&text)?;
        if r.generators() != gens {
            return Err(usage(format!("representation has {} images for {gens} generators", r.generators())));
        }
        return Ok((r, None));
    }
    let spec = rep.preset.as_deref().unwrap_or_default();
    match preset_kind(rep) {
        Some("square") => {
            let p = preset_numbers(spec, &[1, 0])?;
            Ok((Representation::new(square_knot_images(p[0], p[1]), vec![])?, None))
        }
        Some("riley") => {
            let w = preset_numbers(spec, &[1])?[0];
            let Group::Diagram { pres, .. } = &resolved.group else {
                return Err(usage("the riley preset needs a diagram"));
            };
            let known: BTreeMap<usize, IntMatrix> = riley_knot_images(w).into_iter().enumerate().collect();
            Ok((extend_assignment(pres, &known, &[])?, None))
        }
        _ => Err(usage(format!("unknown preset {spec:?}"))),
    }
}

/// Resolve the input for a representation preset that names its own knot.
fn preset_input(input: &InputArgs, rep: &RepArgs) -> InputArgs {
    let mut input = input.clone();
    let no_source = input.diagram.is_none() && input.braid.is_none() && input.example.is_none();
    if no_source && preset_kind(rep) == Some("riley") {
        input.example = Some("riley".into());
    }
    input
}

pub fn analyze(input: &InputArgs, rep: &RepArgs) -> CliResult<Analysis> {
    let resolved = resolve_input(&preset_input(input, rep), rep)?;
    let (rep, seed) = resolve_rep(&resolved, rep)?;
    let (tp, bundle) = match &resolved.group {
        Group::Diagram { pres, .. } => analyze_wirtinger(pres, &rep)?,
        Group::Words(p) => analyze_words(p, &rep)?,
    };
    Ok(Analysis { resolved, rep, seed, tp, bundle })
}

pub fn parse_poly(text: &str) -> CliResult<LaurentPoly> {
    Ok(text.parse::<LaurentPoly>()?)
}
