from fdr_forge.cli.commands import cmd_adjust, cmd_experiment, cmd_list, cmd_plot, cmd_sweep
from fdr_forge.cli.main import build_parser, main

__all__ = ["build_parser", "cmd_adjust", "cmd_experiment", "cmd_list", "cmd_plot", "cmd_sweep", "main"]
