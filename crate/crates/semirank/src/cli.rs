//! The `semirank` command line. Results go to `out`, progress and errors
//! to `err`. Exit codes: 0 success, 1 refuted or not verified, 2 usage or
//! input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use semirank_core::algebra::{knuth_orbit, Hypercube};
use semirank_core::atlas::{self, AtlasEntry, G1, G2, G3};
use semirank_core::codes::{code_equivalent, decomposition_from_rank_ones, genbound, GenMatrix};
use semirank_core::equivalence::{are_equivalent, automorphism_group};
use semirank_core::search::{
    disprove_rank_with, spread_sets_by_rank_with, tensor_rank_with, verify_decomposition, DisproveOptions,
    LevelCount, Outcome, PruningSchedule, SearchReport, Verification,
};
use semirank_core::{codec, Fq, Mat, MatSpace, SpreadSet};

use crate::checkpoint::{self, CheckpointError, Checkpointer};
use crate::format::{self, FormatError, MatrixList};
use crate::pool::Pool;

#[derive(Debug, Parser)]
#[command(name = "semirank", version, about = "Tensor rank of finite semifields over small prime fields")]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the searches.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Field size.
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Matrix size.
    #[arg(long, global = true)]
    n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Atlas entry name or alias.
    #[arg(long, conflicts_with = "spreadset")]
    atlas: Option<String>,
    /// Spread-set file ("q n" header, then n encodings).
    #[arg(long)]
    spreadset: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the matrix with the given encoding.
    Decode { value: u64 },
    /// Encode a matrix given as its n*n entries in row-major order.
    Encode { digits: String },
    /// Check nonsingularity and, with a decomposition, its correctness.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Decomposition file ("q n R" header, then R encodings).
        #[arg(long)]
        decomp: Option<PathBuf>,
    },
    /// Exact tensor rank by growing spaces up to symmetry.
    Rank {
        #[command(flatten)]
        input: Input,
        /// Largest rank to try; defaults to n*n.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Every spread set of tensor rank at most --max, up to isotopism.
    Search {
        #[arg(long)]
        max: usize,
        /// Pruning rule DIM:K (a space of dimension DIM must contain a
        /// K-dimensional partial spread); repeatable.
        #[arg(long, value_parser = parse_rule, conflicts_with = "no_prune")]
        prune: Vec<(usize, usize)>,
        /// Disable pruning; without any flag the standard schedule applies.
        #[arg(long)]
        no_prune: bool,
    },
    /// Show that no rank-one decomposition of length --max exists.
    Disprove {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max: usize,
        /// Checkpoint file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Seconds between checkpoint writes.
        #[arg(long, default_value_t = 60)]
        checkpoint_interval: u64,
        /// Continue from the state stored in --checkpoint.
        #[arg(long, requires = "checkpoint")]
        resume: bool,
        /// Search without code pruning when no certificate exists.
        #[arg(long)]
        allow_unpruned: bool,
        /// Stop after finishing this dimension.
        #[arg(long)]
        stop_after: Option<usize>,
        /// Parents per job.
        #[arg(long)]
        chunk: Option<usize>,
    },
    /// Codes of a decomposition, or the stored generator matrices.
    Codes {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        decomp: Option<PathBuf>,
        /// The stored generator matrix G1 of a [9,4,4]_3 code.
        #[arg(long)]
        g1_paper: bool,
        /// The stored generator matrix G2.
        #[arg(long)]
        g2_paper: bool,
        /// The stored generator matrix G3.
        #[arg(long)]
        g3_paper: bool,
    },
    /// Isotopism classes among the six slot permutations.
    Knuth {
        #[command(flatten)]
        input: Input,
    },
    /// Test two spread sets for isotopism; each is an atlas name or a file.
    Equiv { left: String, right: String },
    /// The built-in catalogue of semifields.
    Atlas {
        #[command(subcommand)]
        action: AtlasAction,
    },
}

#[derive(Debug, Subcommand)]
enum AtlasAction {
    List,
    Selfcheck,
    /// Write an entry in the spread-set (and decomposition) file format.
    Export {
        name: String,
        /// Spread-set output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Decomposition output file.
        #[arg(long)]
        decomp_out: Option<PathBuf>,
    },
}

fn parse_rule(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected DIM:K")?;
    let a = a.trim().parse().map_err(|_| format!("bad dimension {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad partial-spread size {b:?}"))?;
    Ok((a, b))
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] semirank_core::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

type Result<T, E = CliError> = std::result::Result<T, E>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, out, err, start: Instant::now() };
    match ctx.dispatch() {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            2
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    start: Instant,
}

/// A resolved input with a display label.
struct Source {
    label: String,
    space: MatSpace,
    entry: Option<&'static AtlasEntry<'static>>,
}

impl Source {
    fn spread_set(&self) -> Result<SpreadSet> {
        SpreadSet::new(self.space.clone())
            .map_err(|e| CliError::Usage(format!("{} is not a spread set: {e}", self.label)))
    }
}

fn mat_rows(m: &Mat) -> Vec<String> {
    (0..m.n()).map(|i| (0..m.n()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().join(" ")).collect()
}

fn level_line(l: &LevelCount) -> String {
    let mut s = format!("dim {}: spaces {}", l.dim, l.spaces);
    for (name, v) in [("classes", l.classes), ("survivors", l.survivors), ("spread sets", l.spread_sets)] {
        if let Some(v) = v {
            s += &format!(", {name} {v}");
        }
    }
    s
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

impl Ctx<'_> {
    fn dispatch(&mut self) -> Result<i32> {
        match &self.cli.command {
            Command::Decode { value } => self.decode(*value),
            Command::Encode { digits } => self.encode(digits),
            Command::Verify { input, decomp } => self.verify(input, decomp.as_deref()),
            Command::Rank { input, max } => self.rank(input, *max),
            Command::Search { max, prune, no_prune } => self.search(*max, prune, *no_prune),
            Command::Disprove { input, max, checkpoint, checkpoint_interval, resume, allow_unpruned, stop_after, chunk } => {
                let opts = DisproveOptions { allow_unpruned: *allow_unpruned, stop_after: *stop_after, chunk: *chunk };
                let cp = checkpoint.as_ref().map(|p| (p.clone(), Duration::from_secs(*checkpoint_interval)));
                self.disprove(input, *max, &opts, cp, *resume)
            }
            Command::Codes { input, decomp, g1_paper, g2_paper, g3_paper } => {
                self.codes(input, decomp.as_deref(), [*g1_paper, *g2_paper, *g3_paper])
            }
            Command::Knuth { input } => self.knuth(input),
            Command::Equiv { left, right } => self.equiv(left, right),
            Command::Atlas { action } => self.atlas(action),
        }
    }

    fn field_and_size(&self) -> Result<(Fq, usize)> {
        let (Some(q), Some(n)) = (self.cli.q, self.cli.n) else {
            return Err(CliError::Usage("--q and --n are required".into()));
        };
        let f = Fq::new(q)?;
        codec::check_supported(f, n)?;
        Ok((f, n))
    }

    fn check_overrides(&self, f: Fq, n: usize, label: &str) -> Result<()> {
        if self.cli.q.is_some_and(|q| q != f.q() as u32) || self.cli.n.is_some_and(|m| m != n) {
            return Err(CliError::Usage(format!("--q/--n disagree with {label} (q={f}, n={n})")));
        }
        Ok(())
    }

    fn source(&self, input: &Input) -> Result<Source> {
        match (&input.atlas, &input.spreadset) {
            (Some(name), _) => self.atlas_source(name),
            (None, Some(path)) => self.file_source(path),
            (None, None) => Err(CliError::Usage("give --atlas NAME or --spreadset PATH".into())),
        }
    }

    fn atlas_source(&self, name: &str) -> Result<Source> {
        let entry = atlas::atlas_get(name)?;
        let space = entry.space()?;
        self.check_overrides(space.field(), space.n(), entry.name)?;
        Ok(Source { label: entry.name.to_string(), space, entry: Some(entry) })
    }

    fn file_source(&self, path: &Path) -> Result<Source> {
        let list = format::read_spreadset_file(path)?;
        let label = path.display().to_string();
        self.check_overrides(list.field, list.n, &label)?;
        Ok(Source { label, space: MatSpace::from_mats(list.field, list.n, &list.mats), entry: None })
    }

    fn named_source(&self, spec: &str) -> Result<Source> {
        if Path::new(spec).is_file() {
            self.file_source(Path::new(spec))
        } else {
            self.atlas_source(spec)
        }
    }

    fn pool(&self) -> Result<Pool> {
        Pool::new(self.cli.workers as usize).map_err(|e| CliError::Usage(format!("cannot start workers: {e}")))
    }

    fn seconds(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }

    fn emit(&mut self, value: Value, text: &str) -> Result<()> {
        if self.cli.json {
            let mut value = value;
            if let Value::Object(map) = &mut value {
                map.insert("seconds".into(), json!(self.seconds()));
            }
            writeln!(self.out, "{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"))?;
        } else {
            write!(self.out, "{text}")?;
        }
        Ok(())
    }

    fn progress(&mut self, msg: &str) {
        let _ = writeln!(self.err, "[{:.1}s] {msg}", self.seconds());
    }

    fn decode(&mut self, value: u64) -> Result<i32> {
        let (f, n) = self.field_and_size()?;
        let m = codec::decode(value, f, n)?;
        let rows = mat_rows(&m);
        let text = rows.join("\n") + "\n";
        self.emit(json!({ "q": f.q(), "n": n, "value": value, "rows": rows }), &text)?;
        Ok(0)
    }

    fn encode(&mut self, digits: &str) -> Result<i32> {
        let (f, n) = self.field_and_size()?;
        let entries: Vec<u8> = digits
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| c.to_digit(10).map(|d| d as u8).filter(|&d| d < f.q()))
            .collect::<Option<_>>()
            .ok_or_else(|| CliError::Usage(format!("entries must be digits below {f}")))?;
        if entries.len() != n * n {
            return Err(CliError::Usage(format!("expected {} entries, found {}", n * n, entries.len())));
        }
        let value = codec::encode(&Mat::from_entries(f, n, &entries)?);
        self.emit(json!({ "q": f.q(), "n": n, "value": value }), &format!("{value}\n"))?;
        Ok(0)
    }

    fn decomposition(&self, src: &Source, path: Option<&Path>) -> Result<Option<Vec<Mat>>> {
        match path {
            Some(path) => {
                let list = format::read_decomposition_file(path)?;
                if list.field != src.space.field() || list.n != src.space.n() {
                    return Err(CliError::Usage(format!("{} does not match {}", path.display(), src.label)));
                }
                Ok(Some(list.mats))
            }
            None => match src.entry {
                Some(e) => Ok(e.decomposition_mats()?),
                None => Ok(None),
            },
        }
    }

    fn verify(&mut self, input: &Input, decomp: Option<&Path>) -> Result<i32> {
        let src = self.source(input)?;
        let nonsingular = src.space.dim() == src.space.n() && src.space.is_nonsingular();
        let mut text = format!("{}: {}\n", src.label, if nonsingular { "nonsingular" } else { "NOT a spread set" });
        let mut ok = nonsingular;
        let verification = match self.decomposition(&src, decomp)? {
            Some(mats) => {
                let v = verify_decomposition(&src.space, &mats);
                text += &match &v {
                    Verification::Verified => format!("decomposition of length {} verified\n", mats.len()),
                    Verification::NotRankOne { index, rank } => {
                        format!("decomposition entry {index} has rank {rank}, not one\n")
                    }
                    Verification::NotContained { encoding } => {
                        format!("basis element {encoding} is outside the span of the decomposition\n")
                    }
                    Verification::Mismatch => "decomposition has the wrong field or size\n".to_string(),
                };
                ok &= v.is_verified();
                Some((mats.len(), v))
            }
            None => None,
        };
        let value = json!({
            "input": src.label,
            "nonsingular": nonsingular,
            "decomposition": verification.as_ref().map(|(len, v)| json!({ "length": len, "result": v })),
            "verified": ok,
        });
        self.emit(value, &text)?;
        Ok(if ok { 0 } else { 1 })
    }

    fn rank(&mut self, input: &Input, max: Option<usize>) -> Result<i32> {
        let src = self.source(input)?;
        let c = src.spread_set()?;
        let n = c.n();
        let max = max.unwrap_or(n * n);
        if max < n {
            return Err(CliError::Usage(format!("--max must be at least n = {n}")));
        }
        let pool = self.pool()?;
        self.progress(&format!("{}: computing the automorphism group", src.label));
        let aut = automorphism_group(c.space())?;
        self.progress(&format!("automorphism group of order {}; searching up to rank {max}", aut.order()));
        match tensor_rank_with(&c, &aut, max, &pool) {
            Ok(res) => {
                let witness = codec::encode_all(&res.witness);
                let mut text = format!("{}: tensor rank {}\n", src.label, res.rank);
                text += &format!("witness: {}\n", join(&witness));
                for l in &res.levels {
                    text += &(level_line(l) + "\n");
                }
                let value = json!({
                    "input": src.label, "q": c.field().q(), "n": n, "max": max,
                    "automorphisms": aut.order(), "rank": res.rank, "witness": witness,
                    "levels": res.levels,
                });
                self.emit(value, &text)?;
                Ok(0)
            }
            Err(semirank_core::Error::RankExceedsCap(cap)) => {
                let value = json!({ "input": src.label, "q": c.field().q(), "n": n, "max": cap, "rank": null });
                self.emit(value, &format!("{}: tensor rank exceeds {cap}\n", src.label))?;
                Ok(1)
            }
            Err(e) => Err(e.into()),
        }
    }

    fn search(&mut self, max: usize, prune: &[(usize, usize)], no_prune: bool) -> Result<i32> {
        let (f, n) = self.field_and_size()?;
        if max < n {
            return Err(CliError::Usage(format!("--max must be at least n = {n}")));
        }
        let schedule = if no_prune {
            PruningSchedule::none()
        } else if prune.is_empty() {
            PruningSchedule::standard(n)
        } else {
            prune.iter().fold(PruningSchedule::none(), |s, &(d, k)| s.with(d, k))
        };
        let pool = self.pool()?;
        self.progress(&format!("spread sets of order {}^{n} with tensor rank at most {max}", f.q()));
        let res = spread_sets_by_rank_with(f, n, max, &schedule, &pool)?;
        let sets: Vec<Vec<u64>> = res
            .spread_sets
            .iter()
            .map(|s| SpreadSet::new(s.clone()).map(|c| codec::encode_all(&c.standard_basis())))
            .collect::<Result<_, _>>()?;
        let mut text = String::new();
        for l in &res.report.levels {
            text += &(level_line(l) + "\n");
        }
        text += &format!("{} spread-set classes of tensor rank at most {max}\n", sets.len());
        for s in &sets {
            text += &format!("  {}\n", join(s));
        }
        let value = json!({
            "q": f.q(), "n": n, "max": max, "schedule": schedule.rules,
            "levels": res.report.levels, "spread_sets": sets,
        });
        self.emit(value, &text)?;
        Ok(0)
    }

    fn disprove(
        &mut self,
        input: &Input,
        r: usize,
        opts: &DisproveOptions,
        cp: Option<(PathBuf, Duration)>,
        resume: bool,
    ) -> Result<i32> {
        let src = self.source(input)?;
        let c = src.spread_set()?;
        let pool = self.pool()?;
        let state = match (&cp, resume) {
            (Some((path, _)), true) => Some(checkpoint::load(path)?),
            _ => None,
        };
        if let Some(s) = &state {
            self.progress(&format!("resuming at dimension {}, parent {}/{}", s.current.dim, s.next_parent, s.parents.len()));
        }
        self.progress(&format!("{}: computing the automorphism group", src.label));
        let aut = automorphism_group(c.space())?;
        let mut saver = cp.map(|(path, every)| Checkpointer::new(path, every));
        let mut last_note = Instant::now();
        let err = &mut *self.err;
        let start = self.start;
        let report: SearchReport = disprove_rank_with(&c, r, &aut, opts, &pool, state, &mut |s| {
            if let Some(saver) = saver.as_mut() {
                saver.offer(s);
            }
            if last_note.elapsed() >= Duration::from_secs(10) {
                let _ = writeln!(
                    err,
                    "[{:.1}s] dimension {}: parent {}/{}, {} spaces",
                    start.elapsed().as_secs_f64(),
                    s.current.dim,
                    s.next_parent,
                    s.parents.len(),
                    s.current.spaces
                );
                last_note = Instant::now();
            }
        })?;
        if let Some(e) = saver.and_then(|s| s.error) {
            return Err(e.into());
        }
        let mut text = String::new();
        for l in &report.levels {
            text += &(level_line(l) + "\n");
        }
        let code = match &report.outcome {
            Outcome::Exhausted => {
                text += &format!("{}: no decomposition of length {r}; tensor rank > {r}\n", src.label);
                0
            }
            Outcome::Incomplete => {
                text += &format!("{}: stopped early; no decomposition of length {r} found so far\n", src.label);
                0
            }
            Outcome::Witness(w) => {
                text += &format!("{}: decomposition of length {r} found: {}\n", src.label, join(w));
                1
            }
        };
        self.emit(json!({ "input": src.label, "report": report }), &text)?;
        Ok(code)
    }

    fn codes(&mut self, input: &Input, decomp: Option<&Path>, stored: [bool; 3]) -> Result<i32> {
        let mut codes: Vec<(String, GenMatrix)> = Vec::new();
        for ((name, rows), wanted) in [("G1", G1), ("G2", G2), ("G3", G3)].into_iter().zip(stored) {
            if wanted {
                codes.push((name.to_string(), GenMatrix::new(Fq::F3, rows.iter().map(|r| r.to_vec()).collect())?));
            }
        }
        let mut label = None;
        if input.atlas.is_some() || input.spreadset.is_some() {
            let src = self.source(input)?;
            let c = src.spread_set()?;
            let mats = self
                .decomposition(&src, decomp)?
                .ok_or_else(|| CliError::Usage(format!("{} has no stored decomposition; give --decomp", src.label)))?;
            let d = decomposition_from_rank_ones(&c, &mats)?;
            for (i, g) in d.codes().into_iter().enumerate() {
                codes.push((format!("G{}", i + 1), g));
            }
            let bound = genbound(&Hypercube::from_spread_set(&c).to_tensor())?;
            label = Some((src.label, bound.bound));
        } else if decomp.is_some() {
            return Err(CliError::Usage("--decomp needs --atlas or --spreadset".into()));
        }
        if codes.is_empty() {
            return Err(CliError::Usage("give --g1-paper/--g2-paper/--g3-paper or an input with a decomposition".into()));
        }
        let mut text = String::new();
        if let Some((name, bound)) = &label {
            text += &format!("{name}: code length lower bound {bound}\n");
        }
        let mut entries = Vec::new();
        for (name, g) in &codes {
            let weights = g.weight_distribution()?;
            let dist = g.min_distance()?;
            let rows: Vec<String> = g.rows().iter().map(|r| r.iter().map(u8::to_string).collect()).collect();
            text += &format!("{name}: [{}, {}, {}]_{}\n", g.length(), g.dimension(), fmt_opt(dist), g.field().q());
            for r in &rows {
                text += &format!("  {r}\n");
            }
            text += &format!("  weights {weights:?}\n  min distance {}\n", fmt_opt(dist));
            entries.push(json!({
                "name": name, "q": g.field().q(), "length": g.length(), "dimension": g.dimension(),
                "rows": rows, "min_distance": dist, "weights": weights,
            }));
        }
        let mut pairs = Vec::new();
        for i in 0..codes.len() {
            for j in i + 1..codes.len() {
                let eq = code_equivalent(&codes[i].1, &codes[j].1)?;
                text += &format!("{} ~ {}: {}\n", codes[i].0, codes[j].0, if eq { "equivalent" } else { "inequivalent" });
                pairs.push(json!({ "left": codes[i].0, "right": codes[j].0, "equivalent": eq }));
            }
        }
        let value = json!({
            "input": label.as_ref().map(|l| &l.0), "bound": label.as_ref().map(|l| l.1),
            "codes": entries, "equivalence": pairs,
        });
        self.emit(value, &text)?;
        Ok(0)
    }

    fn knuth(&mut self, input: &Input) -> Result<i32> {
        let src = self.source(input)?;
        let c = src.spread_set()?;
        let orbit = knuth_orbit(&c)?;
        let members: Vec<Vec<u64>> = orbit.iter().map(|s| codec::encode_all(&s.standard_basis())).collect();
        let mut text = format!("{}: Knuth orbit classes: {}\n", src.label, members.len());
        for m in &members {
            text += &format!("  {}\n", join(m));
        }
        self.emit(json!({ "input": src.label, "classes": members }), &text)?;
        Ok(0)
    }

    fn equiv(&mut self, left: &str, right: &str) -> Result<i32> {
        let (a, b) = (self.named_source(left)?, self.named_source(right)?);
        let iso = are_equivalent(&a.space, &b.space)?;
        let equivalent = iso.is_some();
        let text = match &iso {
            Some(g) => format!(
                "{} and {} are isotopic\nA:\n  {}\nB:\n  {}\n",
                a.label,
                b.label,
                mat_rows(&g.a).join("\n  "),
                mat_rows(&g.b).join("\n  ")
            ),
            None => format!("{} and {} are not isotopic\n", a.label, b.label),
        };
        let value = json!({
            "left": a.label, "right": b.label, "equivalent": equivalent,
            "isotopism": iso.map(|g| json!({ "a": codec::encode(&g.a), "b": codec::encode(&g.b) })),
        });
        self.emit(value, &text)?;
        Ok(if equivalent { 0 } else { 1 })
    }

    fn atlas(&mut self, action: &AtlasAction) -> Result<i32> {
        match action {
            AtlasAction::List => {
                let mut text = String::new();
                let mut rows = Vec::new();
                for e in atlas::ATLAS {
                    let aliases = if e.aliases.is_empty() { String::new() } else { format!(" ({})", e.aliases.join(", ")) };
                    text += &format!("{}{aliases}: order {}^{}, {}\n", e.name, e.q, e.n, e.description);
                    rows.push(json!({
                        "name": e.name, "aliases": e.aliases, "q": e.q, "n": e.n, "description": e.description,
                        "basis": e.basis, "decomposition": e.decomposition, "expected_rank": e.expected_rank,
                    }));
                }
                self.emit(json!({ "entries": rows }), &text)?;
                Ok(0)
            }
            AtlasAction::Selfcheck => {
                let report = atlas::atlas_selfcheck();
                let mut text = String::new();
                for c in &report.checks {
                    let mark = if c.passed { "ok  " } else { "FAIL" };
                    text += &format!("{mark} {} {}: {}\n", c.entry, c.check, c.detail);
                }
                let passed = report.all_passed();
                text += &format!("{} checks, {} failed\n", report.checks.len(), report.failures().count());
                let checks: Vec<Value> = report
                    .checks
                    .iter()
                    .map(|c| json!({ "entry": c.entry, "check": c.check, "passed": c.passed, "detail": c.detail }))
                    .collect();
                self.emit(json!({ "passed": passed, "checks": checks }), &text)?;
                Ok(if passed { 0 } else { 1 })
            }
            AtlasAction::Export { name, out, decomp_out } => {
                let e = atlas::atlas_get(name)?;
                let f = e.field()?;
                let list = MatrixList { field: f, n: e.n, mats: codec::decode_all(e.basis, f, e.n)? };
                match out {
                    Some(path) => format::write_spreadset_file(path, &list)?,
                    None => write!(self.out, "{}", format::format_spreadset(&list))?,
                }
                if let Some(path) = decomp_out {
                    let mats = e
                        .decomposition_mats()?
                        .ok_or_else(|| CliError::Usage(format!("{} has no stored decomposition", e.name)))?;
                    format::write_decomposition_file(path, &MatrixList { field: f, n: e.n, mats })?;
                }
                Ok(0)
            }
        }
    }
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |d| d.to_string())
}
