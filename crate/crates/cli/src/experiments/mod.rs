//! One function per subcommand: parameters in, report out. Nothing here
//! touches the file system.

use qfoundry::linalg::CMatrix;
use qfoundry::units::UnitSystem;

use crate::args::{Command, Units};
use crate::constants::ConstantsFile;
use crate::error::CliError;
use crate::report::ExperimentReport;

mod bohm;
mod cosmic;
mod entropy;
mod foundations;

#[derive(Debug, Clone)]
pub struct Context {
    pub seed: u64,
    pub units: Units,
    pub constants: ConstantsFile,
}

impl Context {
    pub fn unit_system(&self) -> UnitSystem {
        match self.units {
            Units::Natural => UnitSystem::Natural,
            Units::Si => UnitSystem::Si,
        }
    }
}

pub fn run(command: &Command, ctx: &Context) -> Result<ExperimentReport, CliError> {
    match command {
        Command::Mz(a) => foundations::mz(a),
        Command::Cat(a) => foundations::cat(a),
        Command::Zeno(a) => foundations::zeno(a),
        Command::Decohere(a) => foundations::decohere(a),
        Command::Bell(a) => foundations::bell(a, ctx),
        Command::Frwigner(_) => foundations::frwigner(),
        Command::Immortal(a) => foundations::immortal(a),
        Command::Gaussent(a) => entropy::gaussent(a),
        Command::Pagecurve(a) => entropy::pagecurve(a, ctx),
        Command::Hawking(a) => cosmic::hawking(a, ctx),
        Command::Unruh(a) => cosmic::unruh(a),
        Command::Barrier(a) => cosmic::barrier(a, ctx),
        Command::Tfd(a) => cosmic::tfd(a),
        Command::Rt(a) => cosmic::rt(a),
        Command::Dim(a) => cosmic::dim(a),
        Command::Clock(a) => foundations::clock(a),
        Command::Bohm(a) => bohm::bohm(a, ctx),
        Command::List { .. } | Command::Replay { .. } => {
            Err(CliError::usage(format!("`{}` is not an experiment", command.name())))
        }
    }
}

/// Complex matrix as nested `[re, im]` pairs.
fn matrix_record(m: &CMatrix<f64>) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

fn max_off_diagonal(m: &CMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}
