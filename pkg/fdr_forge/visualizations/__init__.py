from fdr_forge.visualizations.plot_generator import generate_all_plots, plot_table

__all__ = ["generate_all_plots", "plot_table"]
