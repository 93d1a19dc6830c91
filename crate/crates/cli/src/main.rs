use std::process::ExitCode;

use clap::Parser;
use pauli_forge_cli::commands::{run, Cli, Command};
use pauli_forge_cli::{server, ExitStatus};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve { port, capacity } = cli.command {
        let rt = match tokio::runtime::Runtime::new() {
            Ok(rt) => rt,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitStatus::Resource.into();
            }
        };
        return match rt.block_on(server::serve(port, capacity)) {
            Ok(()) => ExitStatus::Success.into(),
            Err(e) => {
                eprintln!("error: {e}");
                ExitStatus::Usage.into()
            }
        };
    }
    match run(cli.command) {
        Ok(s) => s.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.status.into()
        }
    }
}
