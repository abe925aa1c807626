#!/usr/bin/env python3

import csv
import json

from cyclecr.cc_cycles import Cycle
from cyclecr.cc_exceptions import InvalidConfigError, InvalidCycleDocumentError
from cyclecr.cc_figures import ComplexCycle
from cyclecr.cc_io import Cc_IO, CycleDocument, parse_documents, parse_inline
from cyclecr.cc_settings.cc_settings import Cc_Settings
from cyclecr.cc_util import EXIT_OK

from tests.base_tmpl import BaseTmpl, unit


class TestCycleDocument(BaseTmpl):
    def test_parse(self):
        doc = CycleDocument.parse({"k": 1, "l": 0, "n": 0, "m": -1, "label": "C", "oriented": True})
        self.assertEqual(doc.to_cycle(), unit)
        self.assertEqual(doc.label, "C")
        self.assertTrue(doc.oriented)
        self.assertEqual(
            json.dumps(doc.serialize()), '{"k": 1, "l": 0, "n": 0, "m": -1, "label": "C", "oriented": true}'
        )

    def test_float_text_is_kept(self):
        doc = CycleDocument.parse(json.loads('{"k": 0.1, "l": 0.2, "n": 0.3, "m": -0.7}'))
        self.assertEqual(json.dumps(doc.serialize()), '{"k": 0.1, "l": 0.2, "n": 0.3, "m": -0.7}')

    def test_invalid(self):
        for obj in (
            [1, 0, 0, -1],
            {"k": 1, "l": 0, "n": 0},
            {"k": True, "l": 0, "n": 0, "m": 0},
            {"k": "1", "l": 0, "n": 0, "m": 0},
            {"k": float("nan"), "l": 0, "n": 0, "m": 0},
            {"k": 0, "l": 0, "n": 0, "m": 0},
            {"k": 1, "l": 0, "n": 0, "m": 0, "label": 3},
            {"k": 1, "l": 0, "n": 0, "m": 0, "oriented": "yes"},
            {"k": 1, "l": 0, "n": 0, "m": 0, "imag": {"k": 0}},
        ):
            with self.subTest(obj=obj):
                self.assertRaises(InvalidCycleDocumentError, CycleDocument.parse, obj)

    def test_complex(self):
        Z = ComplexCycle(1, 1.5, 1.25j, 1)
        doc = CycleDocument.from_cycle(Z, "Z1")
        self.assertFalse(doc.is_real)
        self.assertEqual(doc.serialize()["imag"], {"k": 0.0, "l": 0.0, "n": 1.25, "m": 0.0})
        self.assertRaises(InvalidCycleDocumentError, doc.to_cycle)
        self.assertEqual(doc.to_cycle_like(), Z)
        self.assertNotIn("imag", CycleDocument.from_cycle(ComplexCycle.from_cycle(unit)).serialize())


class TestParse(BaseTmpl):
    def test_inline(self):
        self.assertEqual(parse_inline("1, 0, 0, -1").to_cycle(), unit)
        self.assertEqual(parse_inline("0,0,1,0.5").m, 0.5)
        self.assertRaises(InvalidCycleDocumentError, parse_inline, "1,0,0")
        self.assertRaises(InvalidCycleDocumentError, parse_inline, "1,a,0,0")
        self.assertRaises(InvalidCycleDocumentError, parse_inline, "0,0,0,0")

    def test_documents(self):
        single = {"k": 1, "l": 0, "n": 0, "m": -1}
        self.assertEqual(len(parse_documents(single)), 1)
        self.assertEqual(len(parse_documents([single, single])), 2)
        figure = {
            "cycles": [single, {"k": 0, "l": 1, "n": 0, "m": 0}],
            "relations": [["C", "orthogonal", "C1"]],
        }
        self.assertEqual([doc.to_cycle() for doc in parse_documents(figure)], [unit, Cycle(0, 1, 0, 0)])
        self.assertRaises(InvalidCycleDocumentError, parse_documents, {"cycles": [single], "relations": {}})
        self.assertRaises(InvalidCycleDocumentError, parse_documents, 42)


class TestCc_IO(BaseTmpl):
    def setUp(self):
        super().setUp()
        self.io = Cc_IO()

    def test_builtins(self):
        self.assertEqual(self.io.load_cycles("@unit")[0].to_cycle(), unit)
        self.assertEqual(Cc_IO.builtin_cycle("i").to_cycle(), Cycle(1, 0, 1, 1))
        names = [name for name, _ in Cc_IO.builtin_descriptions()]
        self.assertIn("real-line", names)
        self.assertEqual(len(names), len(Cc_IO.builtin_cycles()))
        with self.assertRaises(InvalidCycleDocumentError) as cm:
            self.io.load_cycles("@nonexistent")
        self.assertIn("@unit", str(cm.exception))

    def test_load_file(self):
        path = self.tmp_path("cycles.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump({"cycles": [{"k": 1, "l": 0, "n": 0, "m": -1, "label": "C"}]}, f)
        docs = self.io.load_cycles(path)
        self.assertEqual([doc.label for doc in docs], ["C"])

        self.assertRaises(InvalidCycleDocumentError, self.io.load_cycles, self.tmp_path("missing.json"))
        bad = self.tmp_path("bad.json")
        with open(bad, "w", encoding="utf-8") as f:
            f.write("{")
        self.assertRaises(InvalidCycleDocumentError, self.io.load_cycles, bad)

    def test_encoding_fallback(self):
        path = self.tmp_path("utf16.json")
        with open(path, "w", encoding="utf-16") as f:
            json.dump([{"k": 1, "l": 0, "n": 0, "m": -1, "label": "Kreis"}], f)
        docs = self.io.load_cycles(path)
        self.assertEqual(docs[0].label, "Kreis")
        self.assertNotEqual(self.io.previous_encoding, "utf-8")

    def test_write_table(self):
        rows = [{"name": "a", "passed": True}, {"name": "b", "passed": False}]
        csv_path = self.tmp_path("table.csv")
        Cc_IO.write_table(rows, csv_path, "csv")
        with open(csv_path, encoding="utf-8", newline="") as f:
            self.assertEqual(
                list(csv.DictReader(f)), [{"name": "a", "passed": "True"}, {"name": "b", "passed": "False"}]
            )

        json_path = self.tmp_path("table.json")
        Cc_IO.write_table(rows, json_path, "json")
        with open(json_path, encoding="utf-8") as f:
            self.assertEqual(json.load(f), rows)

        empty = self.tmp_path("empty.csv")
        Cc_IO.write_table([], empty, "csv", fieldnames=["name", "passed"])
        with open(empty, encoding="utf-8") as f:
            self.assertEqual(f.read().strip(), "name,passed")
        self.assertRaises(ValueError, Cc_IO.write_table, rows, self.tmp_path("table.xlsx"), "xlsx")

    def test_write_json_to_stdout(self):
        Cc_IO.write_json({"value": 1})
        self.assertEqual(json.loads(self.stdout.getvalue()), {"value": 1})

    def test_is_writable(self):
        self.assertEqual(Cc_IO.is_writable(self.tmp_path("new.csv"))[0], EXIT_OK)


class TestSettings(BaseTmpl):
    def test_load(self):
        path = self.tmp_path("cyclecr.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump({"Numeric/eps-abs": 1e-6, "Verify/trials": 10}, f)
        Cc_Settings.load(path)
        self.assertEqual(Cc_Settings.value("Numeric/eps-abs"), 1e-6)
        self.assertEqual(Cc_Settings.value("Verify/trials"), 10)
        Cc_Settings.reset()
        self.assertEqual(Cc_Settings.value("Verify/trials"), 200)

    def test_invalid(self):
        unknown = self.tmp_path("unknown.json")
        with open(unknown, "w", encoding="utf-8") as f:
            json.dump({"Numeric/eps": 1e-6}, f)
        self.assertRaises(InvalidConfigError, Cc_Settings.load, unknown)

        not_object = self.tmp_path("list.json")
        with open(not_object, "w", encoding="utf-8") as f:
            json.dump([1, 2], f)
        self.assertRaises(InvalidConfigError, Cc_Settings.load, not_object)

        broken = self.tmp_path("broken.json")
        with open(broken, "w", encoding="utf-8") as f:
            f.write("{")
        self.assertRaises(InvalidConfigError, Cc_Settings.load, broken)
