"""
命令行入口
用法: python -m wicks_forms [--json] [--log-level LEVEL] <命令> ...
命令: validate | genus | enumerate | construct | squarefree | represent | count | bounds
退出码: 0 成功，1 领域失败（如 FAIL 报告），2 用法错误
"""

import argparse
import json
import sys
from pathlib import Path

import pandas as pd

from . import bounds
from .config import get_settings
from .construct import (
    Coloring,
    build_v,
    build_z,
    check_v_properties,
    legend_name,
    mirror_triple_free,
    square_free_legend_name,
)
from .enumeration import (
    CatalogStore,
    catalog_summary,
    default_store,
    enumerate_wicks,
    read_catalog,
    rooted_count,
    write_catalog,
)
from .errors import WicksError
from .log import logger, setup_logging
from .represent import count_representations, find_representations, genus_of_word
from .surface import format_graph, validate_wicks, wicks_form
from .templates import render
from .words import format_word, parse_word, square_free_status, thue_word

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """参数组合不合法"""

    pass


# ==================== 参数解析 ====================


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"需要正整数: {text}")
    return value


def non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"需要非负整数: {text}")
    return value


def _add_word_source(p: argparse.ArgumentParser, option: str) -> None:
    """单词从命令行给出，或取 --file 文件的第一个非空行"""
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument(option)
    group.add_argument("--file", help="单词文件（取第一个非空行）")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wicks_forms",
        description="可定向 Wicks 形式：校验、亏格、枚举、构造、表示计数与计数界",
    )
    parser.add_argument("--json", action="store_true", help="以 JSON 输出")
    parser.add_argument("--log-level", default=None, help="日志级别 (默认取 WICKS_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", help="校验 Wicks 条件")
    p.add_argument("word", nargs="?", help='单词，如 "1 2 -1 -2"')
    p.add_argument("--file", help="每行一个单词的文件")
    p.add_argument("--graph", action="store_true", help="同时输出粘合图")

    p = sub.add_parser("genus", help="计算单词的亏格")
    _add_word_source(p, "--word")
    p.add_argument("--g-max", type=positive_int, default=2)
    p.add_argument("--catalog-dir", help="目录缓存位置")
    p.add_argument("--allow-long", action="store_true")

    p = sub.add_parser("enumerate", help="枚举某一亏格的 Wicks 形式")
    p.add_argument("--genus", type=positive_int, required=True)
    p.add_argument("--maximal", action="store_true")
    p.add_argument("--min-length", type=positive_int)
    p.add_argument("--max-length", type=positive_int)
    p.add_argument("--out", help="目录文件输出路径")
    p.add_argument("--allow-long", action="store_true")
    p.add_argument("--time-budget", type=float)

    p = sub.add_parser("construct", help="由极大形式构造 v")
    _add_word_source(p, "--form")
    p.add_argument("--coloring", help='指定顶点颜色，如 "3 1 2 1 3 2"')
    p.add_argument("--offsets", help='指定每顶点标签偏移，如 "0 1 2 0 1 1"')
    p.add_argument("--squarefree", action="store_true", help="同时构造无平方的 z")

    p = sub.add_parser("squarefree", help="无平方判定或生成 Thue 单词")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--word")
    group.add_argument("--thue", type=non_negative_int)
    p.add_argument("--cyclic", action="store_true")

    p = sub.add_parser("represent", help="查找非消去表示")
    _add_word_source(p, "--word")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--form")
    group.add_argument("--catalog")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--limit", type=positive_int)

    p = sub.add_parser("count", help="计算 M(g, w)")
    _add_word_source(p, "--word")
    p.add_argument("--catalog", required=True)

    p = sub.add_parser("bounds", help="计数公式与阶乘不等式")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--genus", type=positive_int)
    group.add_argument("--threshold", action="store_true")
    group.add_argument("--table", type=positive_int, nargs=2, metavar=("A", "B"))
    p.add_argument("--exact", action="store_true", help="使用精确模式")
    p.add_argument(
        "--variant",
        choices=[bounds.VARIANT_STANDARD, bounds.VARIANT_SQUAREFREE],
        default=bounds.VARIANT_STANDARD,
    )
    return parser


# ==================== 各命令 ====================


def _word_text(args, name: str = "word") -> str:
    text = getattr(args, name)
    if text is not None:
        return text.strip()
    lines = [line.strip() for line in Path(args.file).read_text(encoding="utf-8").splitlines()]
    for line in lines:
        if line:
            return line
    raise UsageError(f"文件 {args.file} 中没有单词")


def _int_list(text: str, option: str) -> tuple[int, ...]:
    try:
        return tuple(int(token) for token in text.split())
    except ValueError:
        raise UsageError(f"{option} 需要以空格分隔的整数: {text!r}") from None


def _witness(rep) -> dict:
    return {
        "offset": rep.offset,
        "images": {str(b): format_word(rep.substitution[b]) for b in sorted(rep.substitution.images)},
    }


def cmd_validate(args) -> tuple[dict, int]:
    """
    校验 Wicks 条件
    用法: validate "1 2 -1 -2" [--graph] 或 validate --file words.txt
    """
    if (args.word is None) == (args.file is None):
        raise UsageError("validate 需要单词或 --file 二者之一")
    if args.file:
        texts = [line for line in Path(args.file).read_text(encoding="utf-8").splitlines() if line.strip()]
    else:
        texts = [args.word]

    results = []
    for text in texts:
        word = parse_word(text)
        report = validate_wicks(word)
        graph = None
        if args.graph and report.passed and word:
            graph = format_graph(wicks_form(word).graph)
        results.append(
            {
                "word": format_word(word),
                "report": {
                    "passed": report.passed,
                    "condition": report.condition,
                    "position": report.position,
                    "genus": report.genus,
                    "maximal": report.maximal,
                },
                "graph": graph,
            }
        )
    ok = all(item["report"]["passed"] for item in results)
    return {"results": results}, EXIT_OK if ok else EXIT_FAILURE


def cmd_genus(args) -> tuple[dict, int]:
    """
    计算单词的亏格
    用法: genus (--word "<单词>" | --file FILE) [--g-max 2] [--catalog-dir DIR]
    """
    store = (
        CatalogStore(Path(args.catalog_dir), allow_long=args.allow_long)
        if args.catalog_dir
        else default_store(allow_long=args.allow_long)
    )
    text = _word_text(args)
    result = genus_of_word(parse_word(text), args.g_max, store, args.allow_long)
    payload = {
        "word": text,
        "kind": result.kind,
        "genus": result.genus,
        "g_max": result.g_max,
        "form": str(result.form) if result.form else None,
        "witness": _witness(result.witness) if result.witness else None,
    }
    return payload, EXIT_OK


def cmd_enumerate(args) -> tuple[dict, int]:
    """
    枚举 Wicks 形式
    用法: enumerate --genus 2 [--maximal] [--out g2max.cat]
    """
    length_range = None
    if args.min_length is not None or args.max_length is not None:
        if args.min_length is None or args.max_length is None:
            raise UsageError("--min-length 与 --max-length 需同时给出")
        length_range = (args.min_length, args.max_length)
    catalog = enumerate_wicks(
        args.genus,
        args.maximal,
        length_range,
        allow_long=args.allow_long,
        time_budget=args.time_budget,
    )
    if args.out:
        write_catalog(args.out, catalog)
    summary = catalog_summary(catalog)
    payload = {
        "genus": catalog.genus,
        "maximal": catalog.maximal_only,
        "complete": catalog.complete,
        "count": len(catalog),
        "rooted": rooted_count(catalog),
        "rooted_expected": bounds.rooted_maximal_count(catalog.genus) if catalog.maximal_only else None,
        "m": str(bounds.m_value(catalog.genus)) if catalog.maximal_only else None,
        "out": args.out,
        "forms": [str(form) for form in catalog.forms],
        "summary": summary.to_dict(orient="records"),
    }
    return payload, EXIT_OK


def cmd_construct(args) -> tuple[dict, int]:
    """
    由极大 Wicks 形式构造 v（和 z）
    用法: construct (--form "<极大形式>" | --file FILE) [--coloring "..." --offsets "..."] [--squarefree]
    """
    coloring = Coloring(_int_list(args.coloring, "--coloring")) if args.coloring else None
    offsets = _int_list(args.offsets, "--offsets") if args.offsets else None
    result = build_v(parse_word(_word_text(args, "form")), coloring, offsets)
    report = check_v_properties(result.v)
    payload = {
        "form": format_word(result.form.graph.word),
        "genus": result.genus,
        "coloring": list(result.coloring.colors),
        "offsets": list(result.offsets),
        "v": format_word(result.v),
        "report": report.to_line(),
        "mirror_triple_free": mirror_triple_free(result.v),
        "phi": {str(b): format_word(result.phi[b]) for b in sorted(result.phi)},
        "pairing": list(result.pairing),
        "legend": {str(x): legend_name(x) for x in sorted({abs(y) for y in result.v})},
        "squarefree": None,
    }
    if args.squarefree:
        sf = build_z(result)
        payload["squarefree"] = {
            "z": format_word(sf.z),
            "square_free": square_free_status(sf.z, cyclic=True),
            "mirror_triple_free": mirror_triple_free(sf.z),
            "legend": {str(x): square_free_legend_name(x) for x in sf.legend},
        }
    return payload, EXIT_OK if report.passed else EXIT_FAILURE


def cmd_squarefree(args) -> tuple[dict, int]:
    """
    无平方判定
    用法: squarefree --word "<单词>" [--cyclic] 或 squarefree --thue N
    """
    word = thue_word(args.thue) if args.thue is not None else parse_word(args.word)
    status = square_free_status(word, cyclic=args.cyclic)
    payload = {
        "thue": args.thue,
        "word": format_word(word),
        "cyclic": args.cyclic,
        "square_free": status,
    }
    return payload, EXIT_OK if status else EXIT_FAILURE


def cmd_represent(args) -> tuple[dict, int]:
    """
    查找非消去表示
    用法: represent (--word "<单词>" | --file FILE) (--form "<形式>" | --catalog FILE) [--count-only] [--limit K]
    """
    word = parse_word(_word_text(args))
    if args.catalog:
        catalog = read_catalog(args.catalog)
        forms = list(catalog.forms)
        exact = catalog.complete
    else:
        forms = [wicks_form(parse_word(args.form)).word]
        exact = True

    entries = []
    if args.count_only and args.catalog:
        counted = count_representations(word, catalog)
        count = counted.count
    else:
        limit = 1 if args.count_only else args.limit
        for form in forms:
            reps = find_representations(word, form, limit=limit)
            if reps:
                entries.append({"form": str(form), "representations": [_witness(r) for r in reps]})
        if args.catalog or args.count_only:
            count = len(entries)
        else:
            count = sum(len(e["representations"]) for e in entries)
    payload = {
        "word": format_word(word),
        "catalog": args.catalog,
        "count_only": args.count_only,
        "exact": exact,
        "count": count,
        "forms": entries,
    }
    return payload, EXIT_OK


def cmd_count(args) -> tuple[dict, int]:
    """
    计算 M(g, w)
    用法: count (--word "<单词>" | --file FILE) --catalog FILE
    """
    text = _word_text(args)
    catalog = read_catalog(args.catalog)
    result = count_representations(parse_word(text), catalog)
    payload = {
        "word": text,
        "genus": catalog.genus,
        "count": result.count,
        "exact": result.exact,
    }
    return payload, EXIT_OK


def cmd_bounds(args) -> tuple[dict, int]:
    """
    计数公式与不等式
    用法: bounds --genus G [--exact] [--variant V] | bounds --threshold | bounds --table A B
    """
    mode = bounds.MODE_EXACT if args.exact else bounds.MODE_LOG
    if args.threshold:
        value = bounds.minimal_threshold(bounds.MODE_LOG, args.variant)
        return {"kind": "threshold", "variant": args.variant, "threshold": value}, EXIT_OK
    if args.table:
        a, b = args.table
        if not 1 <= a <= b:
            raise UsageError("--table 需要 1 <= A <= B")
        table = bounds.bound_table(range(a, b + 1), mode, args.variant)
        return {"kind": "table", "variant": args.variant, "rows": table.to_dict(orient="records")}, EXIT_OK

    result = bounds.check_bound(args.genus, mode, args.variant)
    payload = {
        "kind": "check",
        "g": result.g,
        "mode": result.mode,
        "variant": result.variant,
        "holds": result.holds,
        "margin": str(result.margin),
        "dps": result.dps,
        "m": None,
        "V": None,
        "Z": None,
    }
    if 6 * args.genus - 4 <= get_settings().factorial_budget:
        f = bounds.formulas(args.genus)
        payload.update({"m": str(f.m), "V": str(f.V), "Z": str(f.Z)})
    return payload, EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "genus": cmd_genus,
    "enumerate": cmd_enumerate,
    "construct": cmd_construct,
    "squarefree": cmd_squarefree,
    "represent": cmd_represent,
    "count": cmd_count,
    "bounds": cmd_bounds,
}


# ==================== 输出 ====================


def _text_view(verb: str, payload: dict) -> dict:
    """文本模板需要的派生字段（表格字符串）"""
    view = dict(payload)
    if verb == "enumerate":
        view["summary"] = pd.DataFrame(
            payload["summary"], columns=["length", "vertices", "classes", "rooted"]
        ).to_string(index=False)
    if verb == "bounds" and payload.get("kind") == "table":
        view["table"] = pd.DataFrame(payload["rows"]).to_string(index=False)
    return view


def emit(verb: str, payload: dict, as_json: bool, stream=None) -> None:
    stream = sys.stdout if stream is None else stream
    if as_json:
        stream.write(json.dumps({"command": verb, **payload}, ensure_ascii=False, indent=2) + "\n")
    else:
        stream.write(render(verb, _text_view(verb, payload)))


def run(argv: list[str] | None = None) -> int:
    """解析参数并执行命令，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    setup_logging(args.log_level or get_settings().log_level)
    try:
        payload, code = COMMANDS[args.verb](args)
    except (UsageError, ValueError) as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except WicksError as e:
        logger.error(f"{args.verb} 失败: {e}")
        message = render("error", {"message": str(e)})
        if args.json:
            emit(args.verb, {"error": str(e)}, True)
        else:
            sys.stderr.write(message)
        return EXIT_FAILURE
    except OSError as e:
        logger.error(f"{args.verb} 读写文件失败: {e}")
        sys.stderr.write(render("error", {"message": str(e)}))
        return EXIT_FAILURE

    emit(args.verb, payload, args.json)
    return code


def main() -> int:
    return run(sys.argv[1:])
