"""
命令行文本输出模板
每个命令的文本输出都由与 --json 相同的数据字典渲染
"""

from jinja2 import DictLoader, Environment, StrictUndefined

VALIDATE_TEMPLATE = """\
{% for item in results %}
{% if item.report.passed %}
PASS genus={{ item.report.genus }} maximal={{ item.report.maximal | int }}
{% else %}
FAIL {{ item.report.condition }} {{ item.report.position }}
{% endif %}
{% if item.graph %}
{% for line in item.graph %}
{{ line }}
{% endfor %}
{% endif %}
{% endfor %}
"""

GENUS_TEMPLATE = """\
{% if kind == "finite" %}
genus={{ genus }}
form={{ form }}
offset={{ witness.offset }}
{% for base, image in witness.images.items() %}
a{{ base }} -> {{ image }}
{% endfor %}
{% elif kind == "exceeds" %}
genus>{{ g_max }}
{% else %}
genus=infinite
{% endif %}
"""

ENUMERATE_TEMPLATE = """\
genus={{ genus }} maximal={{ maximal | int }} complete={{ complete | int }} count={{ count }}
rooted={{ rooted }}{% if rooted_expected is not none %} expected={{ rooted_expected }}{% endif %}

{% if m is not none %}
W={{ count }} m={{ m }}
{% endif %}
{% if out %}
catalog written to {{ out }}
{% else %}
{% for form in forms %}
{{ form }}
{% endfor %}
{% endif %}
{{ summary }}
"""

CONSTRUCT_TEMPLATE = """\
form={{ form }}
genus={{ genus }} colors={{ coloring | join(",") }} offsets={{ offsets | join(",") }}
v={{ v }}
{{ report }} mirror_triple_free={{ mirror_triple_free | int }}
{% for base, image in phi.items() %}
a{{ base }} -> {{ image }}
{% endfor %}
pairing={{ pairing | join(",") }}
legend:
{% for letter, name in legend.items() %}
  {{ letter }} = {{ name }}
{% endfor %}
{% if squarefree %}
z={{ squarefree.z }}
square_free={{ squarefree.square_free | int }} mirror_triple_free={{ squarefree.mirror_triple_free | int }}
legend:
{% for letter, name in squarefree.legend.items() %}
  {{ letter }} = {{ name }}
{% endfor %}
{% endif %}
"""

SQUAREFREE_TEMPLATE = """\
{% if thue is not none %}
thue={{ thue }}
{% endif %}
word={{ word }}
square_free={{ square_free | int }} cyclic={{ cyclic | int }}
"""

REPRESENT_TEMPLATE = """\
{% if count_only %}
{{ "M" if exact else "M>" }}={{ count }}
{% else %}
{% for entry in forms %}
form={{ entry.form }}
{% for rep in entry.representations %}
offset={{ rep.offset }}
{% for base, image in rep.images.items() %}
a{{ base }} -> {{ image }}
{% endfor %}
{% endfor %}
{% endfor %}
{% if catalog %}
{{ "M" if exact else "M>" }}={{ count }}
{% else %}
representations={{ count }}
{% endif %}
{% endif %}
"""

COUNT_TEMPLATE = """\
{{ "M" if exact else "M>" }}={{ count }}
"""

BOUNDS_TEMPLATE = """\
{% if kind == "check" %}
g={{ g }} mode={{ mode }} variant={{ variant }} holds={{ holds if holds is not none else "undecided" }}
margin={{ margin }} dps={{ dps }}
{% if m is not none %}
m={{ m }}
V={{ V }}
Z={{ Z }}
{% endif %}
{% elif kind == "threshold" %}
threshold={{ threshold }} variant={{ variant }}
{% else %}
{{ table }}
{% endif %}
"""

ERROR_TEMPLATE = """\
error: {{ message }}
"""

TEMPLATES = {
    "validate": VALIDATE_TEMPLATE,
    "genus": GENUS_TEMPLATE,
    "enumerate": ENUMERATE_TEMPLATE,
    "construct": CONSTRUCT_TEMPLATE,
    "squarefree": SQUAREFREE_TEMPLATE,
    "represent": REPRESENT_TEMPLATE,
    "count": COUNT_TEMPLATE,
    "bounds": BOUNDS_TEMPLATE,
    "error": ERROR_TEMPLATE,
}

_env: Environment | None = None


def get_environment() -> Environment:
    """获取全局模板环境"""
    global _env
    if _env is None:
        _env = Environment(
            loader=DictLoader(TEMPLATES),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )
    return _env


def render(name: str, payload: dict) -> str:
    """用指定模板渲染数据字典"""
    return get_environment().get_template(name).render(**payload)
