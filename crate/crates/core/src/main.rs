use std::io;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let env_max = std::env::var(qtorus::cli::MAX_ENV).ok();
    let code = qtorus::cli::run(
        std::env::args_os(),
        env_max,
        &mut io::stdout(),
        &mut io::stderr(),
    );
    std::process::exit(code);
}
