use thinlaw::{Error, FamilySpec, Pmf, Result};

/// Which experiment a config drives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    LtnIid,
    LtnNiid,
    Rate,
    Chain,
    Bounds,
    Compound,
}

/// Parsed invocation: sources, grids, and output handling.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub sources: Vec<FamilySpec>,
    pub lambda: Option<f64>,
    pub n_grid: Vec<usize>,
    pub t_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    pub eps_tail: f64,
    pub compounder: Option<Pmf>,
}

impl ExperimentConfig {
    /// Grid/experiment consistency: exactly the grid the experiment needs,
    /// nonempty.
    pub fn validate(&self) -> Result<()> {
        if self.sources.is_empty() {
            return Err(Error::ParameterDomain(
                "no source distribution given".into(),
            ));
        }
        let need_n = matches!(
            self.experiment,
            ExperimentKind::LtnIid
                | ExperimentKind::Rate
                | ExperimentKind::Bounds
                | ExperimentKind::Compound
        );
        if need_n && self.n_grid.is_empty() {
            return Err(Error::ParameterDomain(
                "this experiment needs a nonempty n grid".into(),
            ));
        }
        if self.experiment == ExperimentKind::Chain && self.t_grid.is_empty() {
            return Err(Error::ParameterDomain(
                "chain experiment needs a nonempty t grid".into(),
            ));
        }
        if self.experiment == ExperimentKind::Compound && self.compounder.is_none() {
            return Err(Error::ParameterDomain(
                "compound experiment needs a compounding distribution".into(),
            ));
        }
        Ok(())
    }

    /// One-line echo for report metadata.
    pub fn echo(&self) -> String {
        format!(
            "experiment={:?} sources={:?} lambda={:?} n_grid={:?} t_grid={:?} alpha_grid={:?} eps_tail={}",
            self.experiment, self.sources, self.lambda, self.n_grid, self.t_grid,
            self.alpha_grid, self.eps_tail
        )
    }
}

/// Parses `name:arg:arg` family descriptors, e.g. `bernoulli:0.4`,
/// `binomial:5:0.4`, `geometric:1`, `poisson:2`, `negbin:2:1.5`, `point:3`.
pub fn parse_family(text: &str) -> Result<FamilySpec> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = |why: &str| Error::ParameterDomain(format!("family '{text}': {why}"));
    let f = |s: &str| s.parse::<f64>().map_err(|_| bad("malformed real argument"));
    let u = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad("malformed integer argument"))
    };
    let spec = match (parts[0], parts.len()) {
        ("point" | "delta", 2) => FamilySpec::PointMass(u(parts[1])?),
        ("bernoulli" | "bern", 2) => FamilySpec::Bernoulli(f(parts[1])?),
        ("binomial" | "bin", 3) => FamilySpec::Binomial(u(parts[1])?, f(parts[2])?),
        ("geometric" | "geo", 2) => FamilySpec::Geometric(f(parts[1])?),
        ("negbin", 3) => FamilySpec::NegativeBinomial(f(parts[1])?, f(parts[2])?),
        ("poisson" | "po", 2) => FamilySpec::Poisson(f(parts[1])?),
        _ => return Err(bad("unknown family or wrong argument count")),
    };
    spec.validate()?;
    Ok(spec)
}

/// Parses a comma-separated real grid.
pub fn parse_grid_f64(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::ParameterDomain(format!("malformed grid entry '{s}'")))
        })
        .collect()
}

/// Parses a comma-separated integer grid.
pub fn parse_grid_usize(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::ParameterDomain(format!("malformed grid entry '{s}'")))
        })
        .collect()
}
