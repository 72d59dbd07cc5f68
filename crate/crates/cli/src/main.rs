use clap::Parser;

fn main() {
    let cli = leibniz_cli::Cli::parse();
    match leibniz_cli::run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.pretty));
            if !cli.pretty {
                println!();
            }
            std::process::exit(report.exit_code());
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(leibniz_cli::EXIT_USAGE);
        }
    }
}
