// Copyright 2026 The defectscan authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "dscan/frontend/frontend.hpp"
#include "dscan/frontend/lexer.hpp"
#include "test_support.hpp"

using namespace dscan;
using namespace dscan::frontend;
namespace A = dscan::frontend::ast;
using test::parse_text;

TEST_CASE("minimal module parses") {
  auto out = parse_text("x = 1\n");
  REQUIRE(out.ok());
  REQUIRE(out.module->tree->body.size() == 1);
  CHECK(out.module->tree->body[0]->kind == A::NodeKind::Assign);
  CHECK(out.physical_lines == 1);
}

TEST_CASE("malformed def header fails at line 1") {
  auto out = parse_text("def f(:\n");
  REQUIRE(!out.ok());
  CHECK(out.error->line == 1);
}

TEST_CASE("fifty-line mixed fixture: class exposes two function children") {
  // Validated against the reference interpreter in the oracle suite below.
  std::string src =
      "import os\n"
      "import sys\n"
      "from collections import OrderedDict\n"
      "\n"
      "\n"
      "CONSTANT = 42\n"
      "\n"
      "\n"
      "class Ledger:\n"
      "    \"\"\"Keeps entries keyed by account.\"\"\"\n"
      "\n"
      "    default_currency = 'EUR'\n"
      "\n"
      "    def __init__(self, owner):\n"
      "        self.owner = owner\n"
      "        self.entries = OrderedDict()\n"
      "        self._sealed = False\n"
      "\n"
      "    def add(self, account, amount):\n"
      "        # amounts accumulate per account\n"
      "        if self._sealed:\n"
      "            raise ValueError('sealed')\n"
      "        current = self.entries.get(account, 0)\n"
      "        self.entries[account] = current + amount\n"
      "        return self.entries[account]\n"
      "\n"
      "\n"
      "def load(path):\n"
      "    ledger = Ledger(os.path.basename(path))\n"
      "    with open(path) as handle:\n"
      "        for line in handle:\n"
      "            account, _, raw = line.partition(',')\n"
      "            try:\n"
      "                amount = int(raw)\n"
      "            except ValueError:\n"
      "                continue\n"
      "            ledger.add(account, amount)\n"
      "    return ledger\n"
      "\n"
      "\n"
      "def main(argv=None):\n"
      "    argv = argv if argv is not None else sys.argv[1:]\n"
      "    for path in argv:\n"
      "        ledger = load(path)\n"
      "        print(ledger.entries)\n"
      "    return 0\n"
      "\n"
      "\n"
      "if __name__ == '__main__':\n"
      "    raise SystemExit(main())\n";
  auto out = parse_text(src);
  REQUIRE(out.ok());
  int classes = 0;
  const A::ClassDefStmt* ledger = nullptr;
  for (auto& s : out.module->tree->body) {
    if (auto* c = A::as<A::ClassDefStmt>(s.get())) {
      ++classes;
      ledger = c;
    }
  }
  REQUIRE(classes == 1);
  int methods = 0;
  for (auto& s : ledger->body)
    if (A::as<A::FunctionDefStmt>(s.get())) ++methods;
  CHECK(methods == 2);
}

TEST_CASE("python 2 print statement fails") {
  auto out = parse_text("print 'hello'\n");
  CHECK(!out.ok());
}

TEST_CASE("tab/space mixing the interpreter rejects is a parse failure") {
  // Space-indented block line followed by a tab-indented one at an
  // ambiguous width.
  auto out = parse_text("if x:\n        a = 1\n\tb = 2\n");
  CHECK(!out.ok());
}

TEST_CASE("effective loc counts code lines only") {
  auto out = parse_text("a = 1\n\n# comment\nb = 2\nc = 3\n");
  REQUIRE(out.ok());
  CHECK(out.module->effective_loc() == 3);
}

TEST_CASE("effective loc: empty file and comment-only file") {
  auto empty = parse_text("");
  REQUIRE(empty.ok());
  CHECK(empty.module->effective_loc() == 0);
  CHECK(empty.physical_lines == 0);

  auto comments = parse_text("# a\n# b\n");
  REQUIRE(comments.ok());
  CHECK(comments.module->effective_loc() == 0);
}

TEST_CASE("docstring lines count as code") {
  auto out = parse_text("def f():\n    \"\"\"doc\n    more\n    \"\"\"\n    return 1\n");
  REQUIRE(out.ok());
  CHECK(out.module->effective_loc() == 5);
}

TEST_CASE("effective loc is additive over disjoint spans and bounded") {
  auto out = parse_text("a = 1\n\nb = 2\n# c\nd = 3\n");
  REQUIRE(out.ok());
  int total = out.module->effective_loc();
  CHECK(total <= out.physical_lines);
  int split = out.module->effective_loc(1, 3) + out.module->effective_loc(4, 5);
  CHECK(split == total);
}

TEST_CASE("parse_stats") {
  std::vector<ParseOutcome> outcomes;
  SUBCASE("empty corpus convention") {
    auto s = parse_stats(outcomes);
    CHECK(s.ratio == 1.0);
    CHECK(s.empty_warning);
  }
  SUBCASE("one of two") {
    outcomes.push_back(parse_text("x = 1\n"));
    outcomes.push_back(parse_text("def f(:\n"));
    auto s = parse_stats(outcomes);
    CHECK(s.parsed == 1);
    CHECK(s.total == 2);
    CHECK(s.ratio == doctest::Approx(0.5));
  }
  SUBCASE("published corpus ratio arithmetic") {
    ParseStats s;
    s.parsed = 238503;
    s.total = 238861;
    double ratio = static_cast<double>(s.parsed) / static_cast<double>(s.total);
    CHECK(ratio == doctest::Approx(0.9985).epsilon(0.00005));
  }
}

TEST_CASE("deterministic: same text gives same tree shape") {
  std::string src = "class A:\n    def f(self):\n        return self.x\n";
  auto a = parse_text(src);
  auto b = parse_text(src);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(a.module->tree->body.size() == b.module->tree->body.size());
  CHECK(a.module->tree->body[0]->end_line == b.module->tree->body[0]->end_line);
}

TEST_CASE("node spans lie within the file") {
  std::string src = "x = 1\n\ndef f():\n    pass\n";
  auto out = parse_text(src);
  REQUIRE(out.ok());
  for (auto& s : out.module->tree->body) {
    CHECK(s->line >= 1);
    CHECK(s->end_line <= out.physical_lines);
    CHECK(s->line <= s->end_line);
  }
}

TEST_CASE("syntax coverage: modern constructs parse") {
  const char* cases[] = {
      "x: int = 0\n",
      "async def f():\n    await g()\n",
      "async def f():\n    async with a() as b:\n        pass\n",
      "async def f():\n    async for i in it:\n        yield i\n",
      "def f(a, /, b, *, c=1, **kw):\n    return a + b + c\n",
      "lambda a, *b, c=2, **d: a\n",
      "result = [y * 2 for x in data if x for y in x if y]\n",
      "s = {k: v for k, v in pairs}\n",
      "g = (n async for n in agen())\n",
      "t = *a, *b\n",
      "first, *rest = items\n",
      "d = {**a, 'k': 1}\n",
      "if (n := len(s)) > 10:\n    pass\n",
      "x = a if b else c\n",
      "del a, b[0], c.d\n",
      "with open('a') as f, open('b') as g:\n    pass\n",
      "with (open('a') as f, open('b') as g):\n    pass\n",
      "try:\n    pass\nexcept (ValueError, KeyError) as e:\n    raise RuntimeError('x') from e\nelse:\n    pass\nfinally:\n    pass\n",
      "@decorator\n@ns.wrapped(arg)\ndef f():\n    pass\n",
      "class C(Base, metaclass=Meta):\n    pass\n",
      "x = f'{a}{b!r}{c:>{w}.2f} {{literal}}'\n",
      "y = f'{obj.attr[0](arg)=}'\n",
      "x = 0x_FF + 0b10_01 + 0o77 + 1_000.5e-3 + 3j\n",
      "s = r'\\d+' + rb'\\x00' + b'abc' + u'u'\n",
      "very_long = (1 +\n             2 +\n             3)\n",
      "backslash = 1 + \\\n    2\n",
      "m = x[1:2, ::3, ..., a:b:c]\n",
      "print(*args, sep=', ', **kwargs)\n",
      "def g():\n    x = yield\n    yield from range(3)\n",
      "match command:\n    case 'go', direction:\n        move(direction)\n    case Point(x=0, y=0) | Origin():\n        reset()\n    case [1, 2, *rest] if rest:\n        pass\n    case {'k': v, **extra}:\n        pass\n    case _:\n        pass\n",
      "match = 5\nmatch(match)\n",
      "case = [match [0]]\n",
      "not_flag = not a in b\n",
      "chained = 0 <= x < 10 != y\n",
      "powers = -2 ** 2 ** -1\n",
      "global_stmt_user = 1\ndef f():\n    global global_stmt_user\n    global_stmt_user = 2\n",
      "def outer():\n    v = 0\n    def inner():\n        nonlocal v\n        v += 1\n    return inner\n",
      "assert condition, 'message'\n",
      "from . import sibling\nfrom ..pkg import name as alias\nfrom mod import (a, b,\n                 c)\nfrom star_mod import *\nimport a.b.c as abc, plain\n",
      "semi = 1; colonial = 2;\n",
      "empty_tuple = ()\nsingle = (1,)\n",
      "s = 'implicit' 'concat' \"works\"\n",
      "class A:\n    class B:\n        def m(self):\n            pass\n",
      "def f(\n    a,\n    b,\n):\n    return (\n        a\n        + b\n    )\n",
      "x = 1 if True else 2, 3\n",
      "if a: b = 1; c = 2\n",
      "while x:\n    break\nelse:\n    pass\n",
      "for i in range(3):\n    continue\nelse:\n    done = True\n",
      "\\\n\n",
      "x = '''triple\nstring with # not a comment\n'''\n",
      "@property\ndef width(self):\n    return self._w\n",
  };
  for (const char* src : cases) {
    CAPTURE(src);
    auto out = parse_text(src);
    if (!out.ok()) {
      CAPTURE(out.error->message);
      CAPTURE(out.error->line);
    }
    CHECK(out.ok());
  }
}

TEST_CASE("syntax coverage: invalid constructs fail") {
  const char* cases[] = {
      "def f(:\n",
      "print 'py2'\n",
      "exec 'code'\n",       // py2 exec statement
      "1 = x\n",
      "f(x) = 1\n",
      "x = (1\n",
      "x = 'unterminated\n",
      "x = '''open\n",
      "class:\n    pass\n",
      "def f():\npass\n",    // missing indent
      "  x = 1\n",           // unexpected indent
      "if x:\n   a = 1\n  b = 2\n",  // bad dedent
      "x = 0x\n",
      "x = 012\n",           // py2 octal
      "import\n",
      "from import x\n",
      "lambda x:\n",
      "a <> b\n",            // py2 inequality
      "x = ur'text'\n",      // invalid prefix in py3
      "def f(x):\n    return\n  y = 1\n",
      "while True\n    pass\n",
      "x = dict(**)\n",
      "try:\n    pass\n",
      "x = $\n",
  };
  for (const char* src : cases) {
    CAPTURE(src);
    auto out = parse_text(src);
    CHECK(!out.ok());
  }
}

TEST_CASE("encoding: PEP 263 declaration and failures") {
  SUBCASE("latin-1 declared") {
    std::string raw = "# -*- coding: latin-1 -*-\nname = '";
    raw.push_back(static_cast<char>(0xE9));  // é in latin-1
    raw += "'\n";
    SourceFile f;
    auto err = decode_source("t.py", raw, f);
    REQUIRE(!err);
    auto out = parse_file(std::move(f));
    CHECK(out.ok());
  }
  SUBCASE("undeclared invalid utf-8 fails") {
    std::string raw = "name = '";
    raw.push_back(static_cast<char>(0xE9));
    raw += "'\n";
    SourceFile f;
    auto err = decode_source("t.py", raw, f);
    CHECK(err.has_value());
  }
  SUBCASE("unsupported codec fails") {
    SourceFile f;
    auto err = decode_source("t.py", "# coding: shift-jis\nx = 1\n", f);
    CHECK(err.has_value());
  }
  SUBCASE("utf-8 bom accepted") {
    SourceFile f;
    std::string raw = "\xEF\xBB\xBFx = 1\n";
    auto err = decode_source("t.py", raw, f);
    REQUIRE(!err);
    CHECK(parse_file(std::move(f)).ok());
  }
  SUBCASE("null byte rejected") {
    SourceFile f;
    std::string raw = "x = 1\n";
    raw.push_back('\0');
    CHECK(decode_source("t.py", raw, f).has_value());
  }
}

TEST_CASE("crlf newlines are normalized") {
  SourceFile f;
  REQUIRE(!decode_source("t.py", "a = 1\r\nb = 2\r\n", f));
  CHECK(f.physical_lines == 2);
  auto out = parse_file(std::move(f));
  REQUIRE(out.ok());
  CHECK(out.module->tree->body.size() == 2);
}

TEST_CASE("oracle: verdicts match the reference interpreter") {
  if (!test::python3_available()) {
    MESSAGE("python3 not available; oracle comparison skipped");
    return;
  }
  const char* snippets[] = {
      "x = 1\n",
      "def f(:\n",
      "class A(Base):\n    def m(self, a):\n        return self.x + a\n",
      "print 'two'\n",
      "if x:\n        a = 1\n\tb = 2\n",
      "x = f'{a + b:{w}}'\n",
      "async def f():\n    return await g()\n",
      "match p:\n    case [x, y] if x > y:\n        pass\n    case _:\n        pass\n",
      "def f(a, /, b, *, c):\n    pass\n",
      "t = *a,\n",
      "x = 012\n",
      "a <> b\n",
      "x = ur'nope'\n",
      "with (open('a') as f,\n      open('b') as g):\n    pass\n",
      "y = [i async for i in agen()]\n",
      "x = 1 if True else 2, 3\n",
      "if a := f():\n    use(a)\n",
      "x = lambda: 0\n",
      "def f():\n    return\n  y\n",
      "nums = {1: 'one', **rest}\n",
      "x = \"adj\" 'acent'\n",
      "class C:\n    x: int\n    y = 0\n",
      "for a, *b in pairs:\n    pass\n",
      "x = b'bytes' b'more'\n",
      "q = x[::2, ...]\n",
      "raise Err('x') from cause\n",
      "def f(a=1, *args, k, **kw): pass\n",
      "x = (yield)\n",
      "x = 5 if\n",
      "@d1\n@d2()\nclass K: pass\n",
      "x = '''t\nr\ni'''\n",
      "def f(*, a): pass\n",
      "x = {i for i in s}\n",
      "case = 1\nmatch = case\n",
      "x = 1_0_0\n",
      "x = 1__0\n",
      "x = .5e-3j\n",
      "del x[0], y.z\n",
      "x = (1,)\n",
      "x = ()\n",
      "f(x for x in y)\n",
      "f(x for x in y, 1)\n",
      "global x\n",
      "def f():\n    global x\n    x = 1\n",
      "x = a.b.c(d).e[f]\n",
      "if x: pass\nelif y: pass\nelse: pass\n",
      "x = not a in b\n",
      "x = -2**2\n",
      "while x := next(it, None):\n    pass\n",
      "x = f'{x!r}' f'{y:>10}' 'tail'\n",
  };
  test::TempDir dir;
  int idx = 0;
  int checked = 0;
  for (const char* src : snippets) {
    std::string rel = "s" + std::to_string(idx++) + ".py";
    dir.write(rel, src);
    bool oracle = test::python3_accepts(dir.path() / rel);
    auto mine = parse_text(src);
    CAPTURE(src);
    CAPTURE(oracle);
    if (mine.ok() != oracle && mine.error) CAPTURE(mine.error->message);
    CHECK(mine.ok() == oracle);
    ++checked;
  }
  CHECK(checked > 0);
}
