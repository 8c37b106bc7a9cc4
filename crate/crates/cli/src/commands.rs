use std::fs;
use std::path::{Path, PathBuf};

use gquasi::io::{parse_seq, parse_space, BoundSeq, SeqSpec};
use gquasi::maps::{
    check_g_uniform_continuity, check_generalized_continuity, distance_map_verdict, product_table, PointMap,
    ProductSpace, UniformityVerdict,
};
use gquasi::metrics::{check_axioms, AxiomReport, Grid, LineRule, Sample, SampleMode};
use gquasi::report::{Check, Report};
use gquasi::reproduce::{reproduce, Params, EXAMPLES};
use gquasi::sequences::{
    certify, diagram_check, eventual_constancy_index, finite_space_completeness, Certificate, PairedSeq,
    Sequence,
};
use gquasi::topology::{induced_gt, GenTopology, TopologyDiagnosis};
use gquasi::{Error, FiniteSpace, GQuasiMetric, GqmPoint, GqmSpace, Rational, Result, Scalar, TableSpace};
use sha2::{Digest, Sha256};

use crate::{Command, GridArgs};

/// Reads input files and hashes them together with the command echo.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new(echo: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(echo.as_bytes());
        Inputs { hasher }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
        self.hasher.update([0u8]);
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn space(&mut self, path: &Path) -> Result<GqmSpace<Rational>> {
        let text = self.read(path)?;
        parse_space(&text).map_err(|e| located(path, e))
    }

    fn table(&mut self, path: &Path) -> Result<TableSpace<Rational>> {
        let space = self.space(path)?;
        space
            .as_table()
            .cloned()
            .map_err(|_| Error::UnsupportedSpace(format!("{}: a finite carrier is required", path.display())))
    }

    fn seq(&mut self, path: &Path) -> Result<SeqSpec<Rational>> {
        let text = self.read(path)?;
        parse_seq(&text).map_err(|e| located(path, e))
    }

    fn topology(&mut self, path: &Path) -> Result<GenTopology> {
        let text = self.read(path)?;
        GenTopology::parse(&text).map_err(|e| located(path, e))
    }

    fn digest(self) -> String {
        let bytes = self.hasher.finalize();
        let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }
}

fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

pub fn run(command: Command, echo: String) -> Result<Report> {
    let mut inputs = Inputs::new(&echo);
    let checks = match command {
        Command::CheckAxioms { space, grid } => {
            pair_arg("--bounds", grid.bounds.as_deref())?;
            let space = inputs.space(&space)?;
            vec![axioms_check("axioms", &space, &grid)?]
        }
        Command::MakeTopology { space, base, emit } => {
            let (gt, source) = match (space, base) {
                (Some(path), _) => (induced_gt(&inputs.table(&path)?)?, "induced by balls"),
                (None, Some(path)) => (inputs.topology(&path)?, "generated by base"),
                (None, None) => unreachable!("clap requires one source"),
            };
            if let Some(path) = emit {
                fs::write(&path, gt.render())
                    .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
            }
            vec![topology_check(&gt, source)]
        }
        Command::DiagnoseTopology { topology } => {
            let gt = inputs.topology(&topology)?;
            vec![topology_check(&gt, "generated by file"), diagnosis_check(&gt)]
        }
        Command::CheckSeparation { topology, space } => {
            let gt = match (topology, space) {
                (Some(path), _) => inputs.topology(&path)?,
                (None, Some(path)) => induced_gt(&inputs.table(&path)?)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            vec![separation_check(&gt)?]
        }
        Command::Product {
            space,
            grid,
            from,
            to,
        } => {
            pair_arg("--bounds", grid.bounds.as_deref())?;
            pair_arg("--from", from.as_deref())?;
            pair_arg("--to", to.as_deref())?;
            let [a, b] = two_spaces(&mut inputs, &space)?;
            product_checks(a, b, &grid, from.zip(to))?
        }
        Command::CheckUniform { space, map, delta, k } => match space.as_slice() {
            [single] => {
                if map.is_some() {
                    return Err(Error::InvalidParameters(
                        "a map needs a domain and a codomain space".into(),
                    ));
                }
                let space = inputs.space(single)?;
                vec![distance_map_check(&space, delta, k)?]
            }
            [domain, codomain] => {
                let map =
                    map.ok_or_else(|| Error::InvalidParameters("--map is required with two spaces".into()))?;
                let x = inputs.table(domain)?;
                let y = inputs.table(codomain)?;
                let map = PointMap::parse(&inputs.read(&map)?).map_err(|e| located(&map, e))?;
                finite_map_checks(&x, &y, &map)?
            }
            _ => {
                return Err(Error::InvalidParameters(
                    "check-uniform takes one or two --space files".into(),
                ))
            }
        },
        Command::ClassifySeq {
            seq,
            space,
            property,
            epsilon,
            k,
            horizon,
        } => {
            let spec = inputs.seq(&seq)?;
            let space = inputs.space(&space)?;
            let cert = match &spec {
                SeqSpec::Pair(a, b) => {
                    let product = ProductSpace::new(space.clone(), space.clone())?;
                    let paired = PairedSeq::new(a.bind(&space)?, b.bind(&space)?);
                    let cert = certify(&paired, &product, property, &epsilon, k, horizon)?;
                    certificate_check(&cert, cert.reverify(&paired, &product), &spec.describe())
                }
                _ => {
                    let bound = spec.bind(&space)?;
                    let cert = certify(&bound, &space, property, &epsilon, k, horizon)?;
                    certificate_check(&cert, cert.reverify(&bound, &space), &spec.describe())
                }
            };
            vec![cert]
        }
        Command::Reproduce {
            id,
            r,
            horizon,
            k,
            seed,
        } => {
            let params = Params { r, horizon, k, seed };
            if id == "all" {
                let mut checks = Vec::new();
                for id in EXAMPLES {
                    checks.extend(reproduce(id, &params)?);
                }
                checks
            } else {
                reproduce(&id, &params)?
            }
        }
        Command::FiniteCompleteness {
            space,
            seq,
            epsilon,
            k,
            horizon,
        } => {
            let table = inputs.table(&space)?;
            let seq = seq.map(|path| inputs.seq(&path)).transpose()?;
            completeness_checks(&table, seq, epsilon, k, horizon)?
        }
    };
    let mut report = Report::new(echo, inputs.digest());
    report.extend(checks);
    Ok(report)
}

fn pair_arg<T>(flag: &str, values: Option<&[T]>) -> Result<()> {
    match values {
        Some(v) if v.len() != 2 => Err(Error::InvalidParameters(format!(
            "{flag} takes two comma-separated values"
        ))),
        _ => Ok(()),
    }
}

fn two_spaces(inputs: &mut Inputs, paths: &[PathBuf]) -> Result<[GqmSpace<Rational>; 2]> {
    match paths {
        [a, b] => Ok([inputs.space(a)?, inputs.space(b)?]),
        _ => Err(Error::InvalidParameters(format!(
            "expected two --space files, got {}",
            paths.len()
        ))),
    }
}

fn grid_for(space: &gquasi::LineSpace<Rational>, args: &GridArgs) -> Result<Grid<Rational>> {
    let default = space.default_grid();
    if args.grid_step.is_none() && args.bounds.is_none() {
        return Ok(default);
    }
    let points = default.points();
    let (lo, hi) = match &args.bounds {
        Some(b) => (b[0].clone(), b[1].clone()),
        None => (points[0].clone(), points[points.len() - 1].clone()),
    };
    let step = args
        .grid_step
        .clone()
        .unwrap_or_else(|| (hi.clone() - lo.clone()) / Rational::from_int(10));
    Grid::new(step, lo, hi)
}

fn axioms_check(name: &str, space: &GqmSpace<Rational>, grid: &GridArgs) -> Result<Check> {
    match space {
        GqmSpace::Table(t) => Ok(axiom_values(name, &t.verify_axioms(), t, &space.describe())),
        GqmSpace::Line(l) => {
            let report = l.verify_axioms(&Sample::Grid(grid_for(l, grid)?))?;
            Ok(axiom_values(name, &report, l, &space.describe()))
        }
    }
}

fn axiom_values<M: GQuasiMetric<Rational>>(
    name: &str,
    report: &AxiomReport<M::Point, Rational>,
    space: &M,
    description: &str,
) -> Check {
    let mode = match &report.coverage.mode {
        SampleMode::Exhaustive => "exhaustive".to_string(),
        SampleMode::Sampled(grid) => format!("sampled, {grid}"),
    };
    let mut check = Check::new(name, report.holds)
        .trivial("space", description)
        .trivial("index", space.index().render())
        .trivial("coverage", mode)
        .derived("points", report.coverage.points)
        .derived("pairs", report.coverage.pairs)
        .derived("triples", report.coverage.triples)
        .derived("symmetric", report.symmetric);
    if let Some(cases) = report.cases {
        let names = gquasi::metrics::TriangleCase::ALL.map(|c| format!("{}={}", c.name(), cases[c.slot()]));
        check = check.derived("triangle-cases", names.join(" "));
    }
    if let Some((x, y)) = &report.asymmetry {
        check = check.derived(
            "asymmetric-pair",
            format!("({}, {})", space.render_point(x), space.render_point(y)),
        );
    }
    if let Some(f) = &report.failure {
        check = check
            .derived("witness", f.describe(space))
            .derived("witness-rechecked", f.reverify(space));
    }
    check
}

fn topology_check(gt: &GenTopology, source: &str) -> Check {
    let opens: Vec<String> = gt.opens().iter().map(|&o| gt.render_set(o)).collect();
    Check::new("generalized topology", gt.is_union_closed())
        .trivial("source", source)
        .trivial("ground", gt.render_set(gt.full()))
        .derived("opens", gt.len())
        .derived("strong", gt.is_strong())
        .derived("family", opens.join(" "))
}

fn diagnosis_check(gt: &GenTopology) -> Check {
    let check = Check::new("is a topology", gt.is_topology());
    match gt.diagnose() {
        TopologyDiagnosis::Topology => check.derived("diagnosis", "topology"),
        TopologyDiagnosis::GroundMissing => check.derived("diagnosis", "ground set is not open"),
        TopologyDiagnosis::IntersectionNotOpen { a, b, meet } => check
            .derived("diagnosis", "intersection not open")
            .derived("a", gt.render_set(a))
            .derived("b", gt.render_set(b))
            .derived("intersection", gt.render_set(meet)),
    }
}

fn separation_check(gt: &GenTopology) -> Result<Check> {
    let s = gt.check_separation()?;
    let label = |i: usize| gt.ground()[i].clone();
    let mut check = Check::new(
        "separation",
        s.t0 && s.t1 && s.singletons_closed && s.implications_hold(),
    )
    .derived("mu-t0", s.t0)
    .derived("mu-t1", s.t1)
    .derived("singletons-closed", s.singletons_closed)
    .derived("implications-hold", s.implications_hold());
    if let Some((x, y)) = s.t0_witness {
        check = check.derived("t0-witness", format!("({}, {})", label(x), label(y)));
    }
    if let Some((x, y)) = s.t1_witness {
        check = check.derived("t1-witness", format!("({}, {})", label(x), label(y)));
    }
    if let Some(x) = s.singleton_witness {
        check = check.derived("singleton-witness", label(x));
    }
    Ok(check)
}

/// Carrier sample: every label of a table, or 11 grid points of a line.
fn sample_points(space: &GqmSpace<Rational>, grid: &GridArgs) -> Result<(Vec<GqmPoint<Rational>>, bool)> {
    match space {
        GqmSpace::Table(t) => Ok((t.points().into_iter().map(GqmPoint::Label).collect(), true)),
        GqmSpace::Line(l) => {
            let coarse = GridArgs {
                grid_step: grid.grid_step.clone(),
                bounds: grid.bounds.clone().or_else(|| {
                    let p = l.default_grid().points();
                    Some(vec![p[0].clone(), p[p.len() - 1].clone()])
                }),
            };
            let g = grid_for(l, &coarse)?;
            Ok((
                g.points()
                    .into_iter()
                    .filter(|x| l.contains(x))
                    .map(GqmPoint::Real)
                    .collect(),
                false,
            ))
        }
    }
}

fn product_checks(
    a: GqmSpace<Rational>,
    b: GqmSpace<Rational>,
    grid: &GridArgs,
    pair: Option<(Vec<String>, Vec<String>)>,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if let (GqmSpace::Table(x), GqmSpace::Table(y)) = (&a, &b) {
        let table = product_table(x, y)?;
        checks.push(axiom_values(
            "product axioms",
            &table.verify_axioms(),
            &table,
            "product table",
        ));
    } else {
        let (xs, exhaustive_a) = sample_points(&a, grid)?;
        let (ys, exhaustive_b) = sample_points(&b, grid)?;
        let points: Vec<_> = xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        let mode = if exhaustive_a && exhaustive_b {
            SampleMode::Exhaustive
        } else {
            SampleMode::Sampled(format!("{} x {} points", xs.len(), ys.len()))
        };
        let product = ProductSpace::new(a.clone(), b.clone())?;
        let report = check_axioms(&product, &points, mode);
        let description = format!("{} x {}", a.describe(), b.describe());
        checks.push(axiom_values("product axioms", &report, &product, &description));
    }
    if let Some((from, to)) = pair {
        let product = ProductSpace::new(a.clone(), b.clone())?;
        let p = (a.parse_point(&from[0])?, b.parse_point(&from[1])?);
        let q = (a.parse_point(&to[0])?, b.parse_point(&to[1])?);
        let left = a.dist(&p.0, &q.0);
        let right = b.dist(&p.1, &q.1);
        let d = product.distance(&p, &q)?;
        checks.push(
            Check::new("product distance", d == Rational::max_of(&left, &right))
                .trivial("from", product.render_point(&p))
                .trivial("to", product.render_point(&q))
                .derived("left", left.render())
                .derived("right", right.render())
                .formula("distance", d.render()),
        );
    }
    Ok(checks)
}

fn verdict_values(mut check: Check, verdict: &UniformityVerdict<Rational>) -> Check {
    check = check.derived("exact", verdict.exact);
    if let Some(eps) = &verdict.epsilon {
        check = check.derived("failing-epsilon", eps.render());
    }
    for (eps, probe) in &verdict.trace {
        let key = format!("epsilon={} delta={}", eps.render(), probe.delta.render());
        check = match &probe.violation {
            None => check.derived(key, "no violation"),
            Some(v) => check.derived(
                key,
                format!(
                    "violated by {} and {}: d_x = {}, d_y = {}",
                    v.x1,
                    v.x2,
                    v.d_x.render(),
                    v.d_y.render()
                ),
            ),
        };
    }
    check.derived("witnesses-consistent", verdict.witnesses_consistent())
}

fn distance_map_check(space: &GqmSpace<Rational>, delta: Vec<Rational>, k: u64) -> Result<Check> {
    let r = match space {
        GqmSpace::Line(l) => match l.rule() {
            LineRule::Piecewise { r } => r.clone(),
            _ => return Err(Error::UnsupportedSpace(l.describe())),
        },
        GqmSpace::Table(_) => {
            return Err(Error::UnsupportedSpace(
                "the distance-map sweep needs a piecewise line space".into(),
            ))
        }
    };
    let deltas = if delta.is_empty() {
        (1..=k as i64)
            .map(|j| r.clone() + Rational::ratio(1, j))
            .collect()
    } else {
        delta
    };
    let verdict = distance_map_verdict(&r, &deltas)?;
    let check = Check::new(
        "distance map not g-uniformly continuous",
        !verdict.uniformly_continuous && verdict.witnesses_consistent(),
    )
    .trivial("r", r.render())
    .derived("deltas", deltas.len());
    Ok(verdict_values(check, &verdict))
}

fn finite_map_checks(
    x: &TableSpace<Rational>,
    y: &TableSpace<Rational>,
    map: &PointMap,
) -> Result<Vec<Check>> {
    let images = map.resolve(x.labels(), y.labels())?;
    let verdict = check_g_uniform_continuity(x, y, &images)?;
    let uniform = verdict_values(
        Check::new(
            "g-uniformly continuous",
            verdict.uniformly_continuous && verdict.witnesses_consistent(),
        )
        .trivial("domain-index", x.index().render())
        .trivial("codomain-index", y.index().render()),
        &verdict,
    );
    let failing = check_generalized_continuity(&images, &induced_gt(x)?, &induced_gt(y)?)?;
    let gt_y = induced_gt(y)?;
    let mut continuity = Check::new(
        "continuous for the induced generalized topologies",
        failing.is_none(),
    );
    if let Some(open) = failing {
        continuity = continuity.derived("open-with-non-open-preimage", gt_y.render_set(open));
    }
    Ok(vec![uniform, continuity])
}

fn certificate_check(cert: &Certificate<Rational>, rechecked: bool, description: &str) -> Check {
    let mut check = Check::new(cert.property.name(), cert.verified() && rechecked)
        .trivial("sequence", description)
        .trivial("epsilon", cert.epsilon.render())
        .trivial("k", cert.k)
        .trivial("horizon", cert.horizon)
        .derived("status", cert.status.name())
        .derived("pairs-checked", cert.pairs_checked)
        .derived("rechecked", rechecked);
    if let Some(w) = &cert.witness {
        check = check.derived(
            "witness",
            format!("m={} n={} distance={}", w.m, w.n, w.distance.render()),
        );
    }
    check
}

/// Terms of a sequence on a table, as point indices.
struct Labels(BoundSeq<Rational>);

impl Sequence<usize> for Labels {
    fn term(&self, n: u64) -> Result<usize> {
        match self.0.term(n)? {
            GqmPoint::Label(i) => Ok(i),
            GqmPoint::Real(x) => Err(Error::PointOutsideCarrier(x.render())),
        }
    }

    fn describe(&self) -> String {
        self.0.describe()
    }
}

fn completeness_checks(
    table: &TableSpace<Rational>,
    seq: Option<SeqSpec<Rational>>,
    epsilon: Option<Rational>,
    k: u64,
    horizon: u64,
) -> Result<Vec<Check>> {
    let r = finite_space_completeness(table);
    let min = r
        .min_off_diagonal
        .as_ref()
        .map_or("none".to_string(), |m| m.render());
    let mut checks = vec![
        Check::new("threshold separates points", r.complete)
            .trivial("points", r.points)
            .trivial("index", r.index.render())
            .derived("min-off-diagonal", min)
            .formula("epsilon0", r.epsilon0.render()),
        Check::new("complete", r.complete),
        Check::new("g-complete", r.g_complete),
        Check::new("weak g-complete", r.weak_g_complete),
        Check::new("lebesgue", r.lebesgue),
        Check::new("strongly lebesgue", r.strongly_lebesgue),
        Check::new("implication diagram", r.diagram_holds()),
    ];
    if let (Some(spec), Some(eps)) = (seq, epsilon) {
        let space = GqmSpace::Table(table.clone());
        let seq = Labels(spec.bind(&space)?);
        let d = diagram_check(&seq, table, &eps, k, horizon)?;
        let mut check = Check::new("certificates respect the diagram", d.holds())
            .trivial("sequence", seq.describe())
            .trivial("epsilon", eps.render())
            .derived("cauchy", d.cauchy.status.name())
            .derived("g-cauchy", d.g_cauchy.status.name())
            .derived("pseudo-cauchy", d.pseudo_cauchy.status.name());
        if d.cauchy.verified() && eps <= r.epsilon0 {
            let tail = eventual_constancy_index(&seq, table, &r, &d.cauchy)?;
            check.passed &= tail.is_some();
            check = check.derived(
                "constant-from",
                tail.map_or("none".to_string(), |n| n.to_string()),
            );
        }
        checks.push(check);
    }
    Ok(checks)
}
