#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# ======================================================================================================================== #
# Project  : DeepE Knowledge Graph Embedding                                                                               #
# Version  : 0.1.0                                                                                                         #
# File     : \cli.py                                                                                                       #
# Language : Python 3.8.12                                                                                                 #
# ------------------------------------------------------------------------------------------------------------------------ #
# Author   : John James                                                                                                    #
# Company  : nov8.ai                                                                                                       #
# Email    : john.james.sf@gmail.com                                                                                       #
# URL      : https://github.com/john-james-sf/deepe                                                                        #
# ------------------------------------------------------------------------------------------------------------------------ #
# Created  : Thursday, October 1st 2026, 7:47:00 am                                                                        #
# Modified : Tuesday, October 6th 2026, 2:28:00 am                                                                         #
# Modifier : John James (john.james.sf@gmail.com)                                                                          #
# ------------------------------------------------------------------------------------------------------------------------ #
# License  : BSD 3-clause "New" or "Revised" License                                                                       #
# Copyright: (c) 2026 nov8.ai                                                                                              #
# ======================================================================================================================== #

"""Command line surface: deepe train | eval | analyze | gradcheck | ablate."""
import functools
import logging
import os
import sys
from typing import List, Optional, Tuple

import click
from dotenv import find_dotenv, load_dotenv
import pandas as pd

from deepe.data.dataset import SPLITS, Dataset, load_tsv
from deepe.data.metadata import DatasetStats
from deepe.data.synthetic import make_rule_graph
from deepe.models.ablation import ablation_configs, depth_sweep, evaluate_gates, run_ablation
from deepe.models.checkpoint import load_checkpoint, save_checkpoint
from deepe.models.evaluate_model import TIES, emit_report, evaluate
from deepe.models.gradcheck import assert_gradients, run_gradcheck
from deepe.models.layers import identity_dropout_table, nonlinear_orders
from deepe.models.train_model import train_loop
from deepe.utils.config import CONFIG_KEYS, Config
from deepe.utils.exceptions import DeepEError
from deepe.utils.file import make_run_dir, write_manifest
from deepe.utils.loggers import configure_logging
from deepe.utils.system import Profiler
# ------------------------------------------------------------------------------------------------------------------------ #
logger = logging.getLogger(__name__)
# ------------------------------------------------------------------------------------------------------------------------ #
FLOAT_FORMAT = "%.6g"
METRIC_KEYS = ("mr", "mrr", "hits1", "hits10")


def guarded(fn):
    """Maps package errors to exit codes: 1 check failure, 2 input error, 3 corrupt artifact."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DeepEError as e:
            click.echo("Error: {}".format(e), err=True)
            sys.exit(e.exit_code)
        except OSError as e:
            click.echo("Error: {}".format(e), err=True)
            sys.exit(2)
    return wrapper


def _click_type(key: str):
    spec = CONFIG_KEYS[key]
    if spec.choices is not None:
        return click.Choice(spec.choices)
    if spec.kind is int:
        return click.INT
    if spec.kind is float:
        return click.FLOAT
    if spec.kind is str:
        return click.STRING
    return click.BOOL


def config_options(exclude: Tuple[str, ...] = ()):
    """Adds --config plus one flag per config key, spelled with underscores and with dashes."""
    def decorator(fn):
        for key in reversed(list(CONFIG_KEYS)):
            if key in exclude:
                continue
            decls = ["--" + key]
            if "_" in key:
                decls.append("--" + key.replace("_", "-"))
            fn = click.option(*decls, key, type=_click_type(key), default=None,
                              help=CONFIG_KEYS[key].help)(fn)
        return click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                            help="key=value configuration file.")(fn)
    return decorator


def data_options(fn):
    fn = click.option("--toy", is_flag=True, help="Use the built-in rule-generated toy graph.")(fn)
    for split in reversed(SPLITS):
        fn = click.option("--" + split, split + "_path", type=click.Path(exists=True, dir_okay=False),
                          help="{} triples (head<TAB>relation<TAB>tail).".format(split))(fn)
    return click.option("--data", "data_dir", type=click.Path(exists=True, file_okay=False),
                        help="Directory holding train.txt, valid.txt and test.txt.")(fn)


def resolve_config(config_path: Optional[str], flags: dict) -> Config:
    config = Config.read(config_path) if config_path else Config()
    return config.override(**{k: v for k, v in flags.items() if k in CONFIG_KEYS})


def load_data(data_dir: Optional[str], train_path: Optional[str], valid_path: Optional[str],
              test_path: Optional[str], toy: bool) -> Tuple[Dataset, List[str]]:
    """Returns the dataset and the files it was read from."""
    if toy:
        return make_rule_graph(), []
    paths = {"train": train_path, "valid": valid_path, "test": test_path}
    for split in SPLITS:
        if paths[split] is None and data_dir is not None:
            paths[split] = os.path.join(data_dir, "{}.txt".format(split))
        if paths[split] is None:
            raise click.UsageError("No {} file given; pass --data DIR, --{} PATH or --toy.".format(split, split))
        if not os.path.isfile(paths[split]):
            raise click.BadParameter("Path '{}' does not exist.".format(paths[split]), param_hint="--data")
    name = os.path.basename(os.path.normpath(data_dir)) if data_dir else None
    files = [paths[s] for s in SPLITS]
    return load_tsv(*files, name=name), files


def _start(out: str, name: Optional[str], verbose: bool, job: str) -> Tuple[str, Profiler]:
    run_dir = make_run_dir(out, name)
    configure_logging(run_dir, verbose)
    profiler = Profiler(job)
    profiler.start()
    return run_dir, profiler


def _echo_metrics(report) -> None:
    frame = report.overall_frame()
    click.echo(frame.to_string(index=False, float_format=lambda x: "{:.6g}".format(x)))


# ------------------------------------------------------------------------------------------------------------------------ #


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log debug messages to the console.")
@click.pass_context
def main(ctx, verbose):
    """DeepE knowledge graph embeddings: train, evaluate and analyze."""
    load_dotenv(find_dotenv(usecwd=True))
    ctx.obj = {"verbose": verbose}


@main.command()
@config_options()
@data_options
@click.option("--runs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Repeat with seeds seed .. seed + runs - 1.")
@click.option("--workers", type=click.IntRange(min=1), default=None,
              help="Evaluation workers, capped by DEEPE_NUM_WORKERS.")
@click.option("--out", type=click.Path(file_okay=False), default="runs", show_default=True)
@click.option("--name", default=None, help="Run directory name (default: start time).")
@click.pass_obj
@guarded
def train(obj, config_path, data_dir, train_path, valid_path, test_path, toy, runs, workers, out, name, **flags):
    """Train, keep the best checkpoint by valid MRR and report on test."""
    config = resolve_config(config_path, flags)
    click.echo(config.header())
    run_dir, profiler = _start(out, name, obj["verbose"], "train")
    dataset, files = load_data(data_dir, train_path, valid_path, test_path, toy)
    base_seed = config.read_config("seed")
    rows, artifacts = [], []
    for i in range(runs):
        seed = base_seed + i
        run_config = Config(config.to_dict()).override(seed=seed)
        run_path = os.path.join(run_dir, "run_{}".format(i))
        os.makedirs(run_path, exist_ok=True)
        result = train_loop(dataset, run_config.model_config(), run_config.train_config(), ties=run_config.ties,
                            workers=workers)
        hashes = (dataset.entity_vocab_hash, dataset.relation_vocab_hash)
        artifacts.append(save_checkpoint(os.path.join(run_path, "final.npz"), result.model, *hashes,
                                         state=result.final_state, optimizer_state=result.optimizer.state,
                                         extra={"seed": seed, "epochs": len(result.log)}))
        artifacts.append(save_checkpoint(os.path.join(run_path, "best.npz"), result.model, *hashes,
                                         state=result.best_state,
                                         extra={"seed": seed, "best_epoch": result.best_epoch}))
        log_path = os.path.join(run_path, "train_log.csv")
        result.log.to_csv(log_path, index=False, float_format=FLOAT_FORMAT)
        artifacts.append(log_path)
        result.model.load_state_dict(result.best_state)
        report = evaluate(result.model, dataset, "test", ties=run_config.ties, workers=workers)
        artifacts.extend(emit_report(report, os.path.join(run_path, "test")).values())
        overall = report.overall["both"]
        rows.append({"run": i, "seed": seed, "best_epoch": result.best_epoch, "epochs": len(result.log),
                     "valid_mrr": result.best_valid_mrr, **{k: getattr(overall, k) for k in METRIC_KEYS}})
        click.echo("Run {} (seed {}): best epoch {}, test {}".format(
            i, seed, result.best_epoch, ", ".join("{} {:.6g}".format(k, getattr(overall, k)) for k in METRIC_KEYS)))

    summary = pd.DataFrame(rows)
    summary.to_csv(os.path.join(run_dir, "summary.csv"), index=False, float_format=FLOAT_FORMAT)
    stats = summary[["valid_mrr", *METRIC_KEYS]].agg(["mean", "std"])
    stats.to_csv(os.path.join(run_dir, "summary_stats.csv"), float_format=FLOAT_FORMAT)
    config.write(os.path.join(run_dir, "config.cfg"))
    write_manifest(run_dir, "train", config.to_dict(), seeds=[r["seed"] for r in rows], data_files=files,
                   profile=profiler.end(), artifacts=artifacts)
    if runs > 1:
        click.echo(stats.to_string(float_format=lambda x: "{:.6g}".format(x)))
    click.echo("Artifacts in {}".format(run_dir))


@main.command(name="eval")
@click.option("--checkpoint", type=click.Path(exists=True, dir_okay=False), required=True)
@data_options
@click.option("--split", type=click.Choice(SPLITS), default="test", show_default=True)
@click.option("--ties", type=click.Choice(TIES), default="average", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=None)
@click.option("--out", type=click.Path(file_okay=False), default="runs", show_default=True)
@click.option("--name", default=None)
@click.pass_obj
@guarded
def evaluate_command(obj, checkpoint, data_dir, train_path, valid_path, test_path, toy, split, ties, workers,
                     out, name):
    """Filtered evaluation of a checkpoint on one split."""
    run_dir, profiler = _start(out, name, obj["verbose"], "eval")
    dataset, files = load_data(data_dir, train_path, valid_path, test_path, toy)
    ckpt = load_checkpoint(checkpoint)
    ckpt.check_vocab(dataset)
    report = evaluate(ckpt.model, dataset, split, ties=ties, workers=workers)
    paths = emit_report(report, os.path.join(run_dir, split))
    _echo_metrics(report)
    write_manifest(run_dir, "eval", ckpt.config.to_dict(), seeds=[ckpt.config.seed], data_files=files,
                   profile=profiler.end(), artifacts=paths.values(), extra={"checkpoint": os.path.abspath(checkpoint),
                                                                          "split": split, "ties": ties})


@main.command()
@config_options()
@data_options
@click.option("--checkpoint", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Trained model for the degree and category breakdowns.")
@click.option("--split", type=click.Choice(SPLITS), default="test", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=None)
@click.option("--out", type=click.Path(file_okay=False), default="runs", show_default=True)
@click.option("--name", default=None)
@click.pass_obj
@guarded
def analyze(obj, config_path, data_dir, train_path, valid_path, test_path, toy, checkpoint, split, workers, out,
            name, **flags):
    """Dataset statistics, identity-dropout survival, non-linear orders and, given a checkpoint,
    MRR by entity degree and by relation category."""
    config = resolve_config(config_path, flags)
    run_dir, profiler = _start(out, name, obj["verbose"], "analyze")
    dataset, files = load_data(data_dir, train_path, valid_path, test_path, toy)
    artifacts = []

    stats = DatasetStats.from_dataset(dataset)
    stats.write(run_dir)
    artifacts += [os.path.join(run_dir, "stats.csv"), os.path.join(run_dir, "stats.txt")]
    relations = dataset.relation_cardinality.copy()
    relations.insert(0, "name", dataset.relations)
    relations.to_csv(os.path.join(run_dir, "relations.csv"), float_format=FLOAT_FORMAT)
    artifacts.append(os.path.join(run_dir, "relations.csv"))

    ckpt = load_checkpoint(checkpoint) if checkpoint else None
    model_config = ckpt.config if ckpt else config.model_config()
    n_blocks, alpha = model_config.deepe_blocks, model_config.dropout.p_identity
    survival = pd.DataFrame(identity_dropout_table(n_blocks, alpha), columns=["order", "total_drop_prob", "survival"])
    survival.to_csv(os.path.join(run_dir, "identity_dropout.csv"), index=False, float_format=FLOAT_FORMAT)
    orders = pd.DataFrame({"kind": kind, "order": order}
                          for kind, inner in (("deepe", model_config.deepe_inner), ("resnet", model_config.deepe_inner))
                          for order in nonlinear_orders(n_blocks, inner, kind))
    orders.to_csv(os.path.join(run_dir, "nonlinear_orders.csv"), index=False)
    artifacts += [os.path.join(run_dir, "identity_dropout.csv"), os.path.join(run_dir, "nonlinear_orders.csv")]
    click.echo(stats.to_frame().to_string())
    click.echo("Identity dropout survival (n={}, alpha={}):".format(n_blocks, alpha))
    click.echo(survival.to_string(index=False, float_format=lambda x: "{:.3f}".format(x)))

    if ckpt:
        ckpt.check_vocab(dataset)
        report = evaluate(ckpt.model, dataset, split, ties=config.ties, workers=workers)
        artifacts.extend(emit_report(report, os.path.join(run_dir, split)).values())
        click.echo(report.by_degree.to_string(index=False, float_format=lambda x: "{:.6g}".format(x)))
    write_manifest(run_dir, "analyze", config.to_dict(), seeds=[model_config.seed], data_files=files,
                   profile=profiler.end(), artifacts=artifacts)


@main.command()
@click.option("--precision", type=click.Choice(["32", "64"]), default="64", show_default=True)
@click.option("--perturb-backward", "--perturb_backward", "perturb_backward", is_flag=True,
              help="Scale analytic gradients by 1.01 (negative control).")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Write gradcheck.csv here.")
@click.pass_obj
@guarded
def gradcheck(obj, precision, perturb_backward, seed, out):
    """Finite-difference check of every layer type and the full model."""
    configure_logging(out, obj["verbose"])
    report = run_gradcheck(int(precision), perturb_backward, seed)
    summary = report.groupby(["check", "parameter"], sort=False)["rel_error"].max().reset_index()
    click.echo(summary.to_string(index=False, float_format=lambda x: "{:.3g}".format(x)))
    if out is not None:
        os.makedirs(out, exist_ok=True)
        report.to_csv(os.path.join(out, "gradcheck.csv"), index=False, float_format=FLOAT_FORMAT)
        write_manifest(out, "gradcheck", {"precision": int(precision), "perturb_backward": perturb_backward},
                       seeds=[seed], artifacts=[os.path.join(out, "gradcheck.csv")])
    # 32-bit differences are too noisy to gate on; the report is written either way
    assert_gradients(report, strict=int(precision) == 64)
    failed = int((~report["passed"]).sum())
    if failed:
        click.echo("{} of {} gradient groups above the 32-bit tolerance {:.0e}; reported only.".format(
            failed, len(report), report["tolerance"].iloc[0]))
    else:
        click.echo("All {} gradient groups within tolerance {:.0e}.".format(len(report), report["tolerance"].iloc[0]))


@main.command()
@config_options(exclude=("gate", "feature_block_kind"))
@data_options
@click.option("--checkpoint", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Evaluate gate variants of a trained single-block model instead of retraining.")
@click.option("--no-project", "--no_project", "no_project", is_flag=True, help="Drop the project network.")
@click.option("--no-identity-dropout", "--no_identity_dropout", "no_identity_dropout", is_flag=True)
@click.option("--gate", type=click.Choice(["linear", "nonlinear"]), default=None,
              help="Keep only one branch of a single-block feature network.")
@click.option("--feature-block-kind", "--feature_block_kind", "feature_block_kind",
              type=click.Choice(["deepe", "resnet"]), default=None)
@click.option("--depths", default=None, help="Comma-separated feature depths for a depth sweep, e.g. 1,2,4,8.")
@click.option("--split", type=click.Choice(SPLITS), default="test", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=None)
@click.option("--out", type=click.Path(file_okay=False), default="runs", show_default=True)
@click.option("--name", default=None)
@click.pass_obj
@guarded
def ablate(obj, config_path, data_dir, train_path, valid_path, test_path, toy, checkpoint, no_project,
           no_identity_dropout, gate, feature_block_kind, depths, split, workers, out, name, **flags):
    """Train or evaluate ablated variants and write comparison CSVs."""
    config = resolve_config(config_path, flags)
    depth_list = []
    if depths:
        try:
            depth_list = [int(d) for d in depths.split(",") if d.strip()]
        except ValueError:
            raise click.BadParameter("Depths must be comma-separated integers, got {!r}.".format(depths),
                                     param_hint="--depths")
    run_dir, profiler = _start(out, name, obj["verbose"], "ablate")
    dataset, files = load_data(data_dir, train_path, valid_path, test_path, toy)
    artifacts = []

    if checkpoint:
        ckpt = load_checkpoint(checkpoint)
        ckpt.check_vocab(dataset)
        comparison = evaluate_gates(ckpt.model, dataset, split, config.ties, workers,
                                    gates=("both", gate) if gate else ("both", "linear", "nonlinear"))
    else:
        variants = ablation_configs(config.model_config(), no_project, no_identity_dropout, gate, feature_block_kind)
        comparison = run_ablation(dataset, variants, config.train_config(), split, config.ties, workers)
    path = os.path.join(run_dir, "comparison.csv")
    comparison.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    artifacts.append(path)
    click.echo(comparison[["variant", *METRIC_KEYS]].to_string(index=False, float_format=lambda x: "{:.6g}".format(x)))

    if depth_list:
        kinds = (feature_block_kind,) if feature_block_kind else ("deepe", "resnet")
        sweep = depth_sweep(dataset, config.model_config(), config.train_config(), depth_list, kinds, split,
                            config.ties, workers)
        path = os.path.join(run_dir, "depth_sweep.csv")
        sweep.to_csv(path, index=False, float_format=FLOAT_FORMAT)
        artifacts.append(path)
        click.echo(sweep[["kind", "depth", "mrr"]].to_string(index=False, float_format=lambda x: "{:.6g}".format(x)))
    write_manifest(run_dir, "ablate", config.to_dict(), seeds=[config.read_config("seed")], data_files=files,
                   profile=profiler.end(), artifacts=artifacts)


if __name__ == "__main__":
    main()
