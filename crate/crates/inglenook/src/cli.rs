//! The `inglenook` command line.
//!
//! Exit codes: 0 success, 1 negative answer (unsolvable, unreachable, an
//! illegal move or a disconnected graph), 2 input error, 3 search budget
//! exceeded.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use inglenook_core::constructive::{shunt_move_bound, solve_to_pattern, SolveError};
use inglenook_core::feasibility::{cards_connected, inglenook_solvable, max_wagons, FeasibilityVerdict};
use inglenook_core::model::apply_move;
use inglenook_core::pattern::GoalPattern;
use inglenook_core::search::{
    cards_component_census, cards_diameter, inglenook_census, inglenook_diameter, optimal_solve, reversal_distance,
    worst_case_moves, SearchConfig, SearchError, DEFAULT_BUDGET,
};
use inglenook_core::{CardsSpec, Position, PuzzleSpec};

use crate::format::{
    format_position, format_trace, is_pattern_text, parse_instance, parse_pattern, parse_position, parse_trace,
    position_tokens, trace_start_tokens, Instance, ParseError,
};
use crate::gen::Generator;
use crate::labels::LabelTable;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "inglenook", version, about = "Solve and analyse inglenook shunting puzzles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the puzzle can always be solved.
    Check {
        #[command(flatten)]
        common: Common,
        /// Confirm the verdict by enumerating every position.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Constructive solution with a guaranteed move bound.
    Solve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ends: Ends,
    },
    /// Shortest solution by breadth-first search.
    Optimal {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ends: Ends,
    },
    /// Largest optimal move count over a set of starting positions.
    Worst {
        #[command(flatten)]
        common: Common,
        /// Starting pattern (file or inline); every position when omitted.
        #[arg(long)]
        starts: Option<String>,
        /// Goal pattern or position (file or inline).
        #[arg(long)]
        goal: String,
    },
    /// Exact diameter of a cards-in-piles or inglenook graph.
    Diameter {
        #[command(flatten)]
        common: Common,
        /// Use the lower-bound family: w cards on piles (w-1, w-1, 1), plus
        /// the reversal distance on the matching inglenook layout.
        #[arg(long, value_name = "W")]
        family: Option<usize>,
    },
    /// Sample positions uniformly from a pattern.
    Gen {
        #[command(flatten)]
        common: Common,
        /// Pattern to sample from (file or inline); every position when omitted.
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Replay a move list and print the final position.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Start position (file or inline); taken from the move file when omitted.
        #[arg(long)]
        start: Option<String>,
        /// Move list or trace file.
        #[arg(long)]
        moves: String,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Instance file (`wagons`/`headshunt`/`sidings` or `cards`/`piles`).
    #[arg(long, conflicts_with_all = ["wagons", "headshunt", "sidings"])]
    spec: Option<String>,
    #[arg(long)]
    wagons: Option<usize>,
    #[arg(long)]
    headshunt: Option<usize>,
    /// Siding capacities, e.g. "3 3 5" or 3,3,5.
    #[arg(long)]
    sidings: Option<String>,
    /// Cap on visited states.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Search threads (0 = one per core).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct Ends {
    /// Start position (file or inline).
    #[arg(long)]
    start: String,
    /// Goal position or pattern (file or inline).
    #[arg(long)]
    goal: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
}

/// A failed command: exit code plus message for standard error.
struct Failure {
    code: i32,
    msg: String,
}

fn input(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, msg: msg.into() }
}

fn negative(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_NEGATIVE, msg: msg.into() }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::BudgetExceeded { .. } => EXIT_BUDGET,
            SearchError::Disconnected(_) => EXIT_NEGATIVE,
            _ => EXIT_INPUT,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Runs one command line (`args[0]` is the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Check { common, exhaustive } => check(&common, exhaustive),
        Command::Solve { common, ends } => solve(&common, &ends),
        Command::Optimal { common, ends } => optimal(&common, &ends),
        Command::Worst { common, starts, goal } => worst(&common, starts.as_deref(), &goal),
        Command::Diameter { common, family } => diameter(&common, family),
        Command::Gen { common, start, seed, count } => gen(&common, start.as_deref(), seed, count),
        Command::Verify { common, start, moves } => verify(&common, start.as_deref(), &moves),
    }
}

impl Common {
    fn config(&self) -> SearchConfig {
        let _ = self.format;
        SearchConfig { budget: self.budget, threads: self.threads }
    }

    fn instance(&self) -> Result<Instance, Failure> {
        if let Some(path) = &self.spec {
            let text = read_source(path)?;
            return parse_instance(&text).map_err(|e| located(path, e));
        }
        let (Some(w), Some(h), Some(s)) = (self.wagons, self.headshunt, &self.sidings) else {
            return Err(input("give --spec, or all of --wagons, --headshunt and --sidings"));
        };
        let text = format!("wagons = {w}\nheadshunt = {h}\nsidings = {s}\n");
        parse_instance(&text).map_err(|e| input(format!("invalid instance flags: {}", e.msg)))
    }

    fn puzzle(&self) -> Result<PuzzleSpec, Failure> {
        match self.instance()? {
            Instance::Puzzle(p) => Ok(p),
            Instance::Cards(_) => Err(input("this command needs an inglenook instance, not a cards-in-piles one")),
        }
    }
}

/// The argument's contents when it names an existing file, else the
/// argument itself.
fn read_source(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| input(format!("{arg}: {e}")));
    }
    if arg.contains(|c: char| c.is_whitespace() || matches!(c, ':' | '=' | '~')) {
        return Ok(arg.to_owned());
    }
    Err(input(format!("{arg}: no such file")))
}

fn source_name(arg: &str) -> &str {
    if Path::new(arg).is_file() {
        arg
    } else {
        "<inline>"
    }
}

fn located(arg: &str, e: ParseError) -> Failure {
    input(format!("{}: {e}", source_name(arg)))
}

fn labels_for(spec: &PuzzleSpec, start_text: &str, arg: &str) -> Result<LabelTable, Failure> {
    let tokens = position_tokens(start_text).map_err(|e| located(arg, e))?;
    LabelTable::from_tokens(&tokens, spec.wagons()).map_err(|e| input(format!("{}: {e}", source_name(arg))))
}

fn goal_pattern(spec: &PuzzleSpec, arg: &str, labels: &LabelTable) -> Result<GoalPattern, Failure> {
    let text = read_source(arg)?;
    if is_pattern_text(&text) {
        let g = parse_pattern(&text, spec, labels).map_err(|e| located(arg, e))?;
        g.check(spec).map_err(|e| input(format!("{}: {e}", source_name(arg))))?;
        Ok(g)
    } else {
        let p = parse_position(&text, spec, labels).map_err(|e| located(arg, e))?;
        Ok(GoalPattern::exact(&p))
    }
}

fn verdict_lines(v: &FeasibilityVerdict) -> String {
    let head = if v.solvable { "solvable" } else { "unsolvable" };
    format!("{head}, slack {}\nbranch = {}\nreason = {}\n", v.slack, v.branch, v.branch.describe())
}

fn check(common: &Common, exhaustive: bool) -> Outcome {
    let config = common.config();
    let (mut text, solvable, census) = match common.instance()? {
        Instance::Puzzle(spec) => {
            let v = inglenook_solvable(&spec);
            let mut text = verdict_lines(&v);
            text.push_str(&format!("max_wagons = {}\n", max_wagons(spec.headshunt(), spec.sidings())));
            let census = exhaustive.then(|| inglenook_census(&spec, &config)).transpose()?;
            (text, v.solvable, census)
        }
        Instance::Cards(spec) => {
            let v = cards_connected(&spec);
            let text = verdict_lines(&v);
            let census = exhaustive.then(|| cards_component_census(&spec, &config)).transpose()?;
            (text, v.solvable, census)
        }
    };
    if let Some(c) = census {
        text.push_str(&format!(
            "states = {}\ncomponents = {}\nagrees = {}\n",
            c.states(),
            c.components(),
            c.is_connected() == solvable
        ));
    }
    Ok((text, if solvable { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn solve(common: &Common, ends: &Ends) -> Outcome {
    let spec = common.puzzle()?;
    let start_text = read_source(&ends.start)?;
    let labels = labels_for(&spec, &start_text, &ends.start)?;
    let start = parse_position(&start_text, &spec, &labels).map_err(|e| located(&ends.start, e))?;
    let goal = goal_pattern(&spec, &ends.goal, &labels)?;
    match solve_to_pattern(&spec, &start, &goal) {
        Ok(trace) => {
            let mut text = format!("bound = {}\nlength = {}\n", shunt_move_bound(spec.wagons()), trace.len());
            text.push_str(&format_trace(&trace.start, &trace.moves, &trace.finish, &labels));
            Ok((text, EXIT_OK))
        }
        Err(SolveError::Unsolvable(v)) => {
            Err(negative(format!("cannot always be solved: {}", verdict_lines(&v).trim_end().replace('\n', "; "))))
        }
        Err(e) => Err(input(e.to_string())),
    }
}

fn optimal(common: &Common, ends: &Ends) -> Outcome {
    let spec = common.puzzle()?;
    let start_text = read_source(&ends.start)?;
    let labels = labels_for(&spec, &start_text, &ends.start)?;
    let start = parse_position(&start_text, &spec, &labels).map_err(|e| located(&ends.start, e))?;
    let goal = goal_pattern(&spec, &ends.goal, &labels)?;
    let report = optimal_solve(&spec, &start, &goal, &common.config())?;
    match (report.distance, report.trace) {
        (Some(d), Some(trace)) => {
            let mut text = format!("distance = {d}\nexplored = {}\n", report.explored);
            text.push_str(&format_trace(&trace.start, &trace.moves, &trace.finish, &labels));
            Ok((text, EXIT_OK))
        }
        _ => Ok((format!("distance = unreachable\nexplored = {}\n", report.explored), EXIT_NEGATIVE)),
    }
}

fn worst(common: &Common, starts: Option<&str>, goal_arg: &str) -> Outcome {
    let spec = common.puzzle()?;
    let labels = LabelTable::canonical(spec.wagons());
    let starts = match starts {
        Some(arg) => goal_pattern(&spec, arg, &labels)?,
        None => GoalPattern::any(&spec),
    };
    let goal = goal_pattern(&spec, goal_arg, &labels)?;
    let w = worst_case_moves(&spec, &starts, &goal, &common.config())?;
    let moves = w.moves.map_or("unreachable".to_owned(), |m| m.to_string());
    let text = format!(
        "worst = {moves}\nwitness = {}\nstarts = {}\nexplored = {}\n",
        format_position(&w.witness, &labels),
        w.starts,
        w.explored
    );
    Ok((text, if w.moves.is_some() { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn diameter(common: &Common, family: Option<usize>) -> Outcome {
    let config = common.config();
    if let Some(w) = family {
        if w < 2 {
            return Err(input("--family needs at least 2 cards"));
        }
        let spec = CardsSpec::new(w, vec![w - 1, w - 1, 1]).map_err(|e| input(e.to_string()))?;
        let d = cards_diameter(&spec, &config)?;
        let r = reversal_distance(w, &config)?;
        let text = format!(
            "cards = {w}\npiles = {} {} 1\ndiameter = {d}\ndiameter_lower_bound = {}\nreversal_moves = {}\nreversal_card_moves = {}\nreversal_lower_bound = {}\n",
            w - 1,
            w - 1,
            (w * w - 1).div_ceil(4),
            r.shunt_moves,
            r.card_moves,
            r.lower_bound
        );
        return Ok((text, EXIT_OK));
    }
    let text = match common.instance()? {
        Instance::Cards(spec) => format!("diameter = {}\n", cards_diameter(&spec, &config)?),
        Instance::Puzzle(spec) => format!("diameter = {}\n", inglenook_diameter(&spec, &config)?),
    };
    Ok((text, EXIT_OK))
}

fn gen(common: &Common, start: Option<&str>, seed: u64, count: usize) -> Outcome {
    let spec = common.puzzle()?;
    let labels = LabelTable::canonical(spec.wagons());
    let pattern = match start {
        Some(arg) => goal_pattern(&spec, arg, &labels)?,
        None => GoalPattern::any(&spec),
    };
    let mut g = Generator::new(seed);
    let mut text = String::new();
    for _ in 0..count {
        let p = g.sample(&spec, &pattern).map_err(|e| input(e.to_string()))?;
        text.push_str(&format_position(&p, &labels));
        text.push('\n');
    }
    Ok((text, EXIT_OK))
}

fn verify(common: &Common, start: Option<&str>, moves_arg: &str) -> Outcome {
    let spec = common.puzzle()?;
    let moves_text = read_source(moves_arg)?;
    let (start_text, start_arg) = match start {
        Some(arg) => (Some(read_source(arg)?), arg),
        None => (None, moves_arg),
    };
    let labels = match &start_text {
        Some(t) => labels_for(&spec, t, start_arg)?,
        None => {
            let tokens = trace_start_tokens(&moves_text)
                .ok_or_else(|| input("no start position: give --start or begin the move file with one"))?;
            LabelTable::from_tokens(&tokens, spec.wagons())
                .map_err(|e| input(format!("{}: {e}", source_name(moves_arg))))?
        }
    };
    let trace = parse_trace(&moves_text, &spec, &labels).map_err(|e| located(moves_arg, e))?;
    let mut pos: Position = match &start_text {
        Some(t) => parse_position(t, &spec, &labels).map_err(|e| located(start_arg, e))?,
        None => trace.start.clone().map(|(_, p)| p).ok_or_else(|| input("no start position"))?,
    };
    for (line, mv) in &trace.moves {
        pos = apply_move(&spec, &pos, *mv)
            .map_err(|e| negative(format!("{}: line {line}: illegal move `{mv}`: {e}", source_name(moves_arg))))?;
    }
    if let Some((line, finish)) = &trace.finish {
        if *finish != pos {
            return Err(negative(format!(
                "{}: line {line}: replay ends at {}, not at the recorded finish",
                source_name(moves_arg),
                format_position(&pos, &labels)
            )));
        }
    }
    Ok((format!("{}\n", format_position(&pos, &labels)), EXIT_OK))
}
