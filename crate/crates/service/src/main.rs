use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mathpar_service::cli::{self, Options};
use mathpar_service::{router, AppState, Config};

#[derive(Parser)]
#[command(name = "mathpar", version, about = "Mathpar computer algebra kernel")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Flags {
    /// Print LaTeX instead of Mathpar text.
    #[arg(long, global = true)]
    latex: bool,
    /// Starting space, e.g. `Q[x, y]`.
    #[arg(long, global = true, value_name = "NAME[VARS]")]
    space: Option<String>,
    /// Digits after the decimal point.
    #[arg(long, global = true, value_name = "N")]
    floatpos: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a script file as one section.
    Run { file: PathBuf },
    /// Interactive session; a blank line runs the lines typed so far.
    Repl,
    /// Start the HTTP service.
    Serve {
        #[arg(long)]
        port: Option<u16>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        latex: cli.flags.latex,
        space: cli.flags.space,
        floatpos: cli.flags.floatpos,
    };
    let code = match cli.command {
        Command::Run { file } => {
            cli::run_file(&file, &opts, &mut std::io::stdout(), &mut std::io::stderr())
        }
        Command::Repl => {
            if std::io::stdin().is_terminal() {
                eprintln!(
                    "mathpar {}; end a group with a blank line",
                    env!("CARGO_PKG_VERSION")
                );
            }
            cli::repl(
                &mut std::io::stdin().lock(),
                &opts,
                &mut std::io::stdout(),
                &mut std::io::stderr(),
            )
        }
        Command::Serve { port } => serve(port),
    };
    ExitCode::from(code as u8)
}

fn serve(port: Option<u16>) -> i32 {
    let mut config = Config::from_env();
    if let Some(p) = port {
        config.port = p;
    }
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            eprintln!("cannot start runtime: {e}");
            return 1;
        }
    };
    runtime.block_on(async move {
        let addr = std::net::SocketAddr::from(([0, 0, 0, 0], config.port));
        let listener = match tokio::net::TcpListener::bind(addr).await {
            Ok(l) => l,
            Err(e) => {
                eprintln!("cannot bind {addr}: {e}");
                return 1;
            }
        };
        eprintln!("listening on {addr}");
        let app = router(AppState::new(&config));
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        match axum::serve(listener, app)
            .with_graceful_shutdown(shutdown)
            .await
        {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("server error: {e}");
                1
            }
        }
    })
}
