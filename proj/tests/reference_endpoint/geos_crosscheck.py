# Copyright 2026 The geobench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Recomputes every synthetic instance's row count at n=64 with shapely
(GEOS) directly from the generated N-Triples and compares it with the
manifest's expected_count. Independent of both the geobench geometry code
and any SPARQL engine.

Exit status: 0 pass, 1 fail, 77 skipped (shapely unavailable).
"""

import argparse
import json
import os
import re
import sys
import tempfile
from collections import defaultdict

import common

BASE = "http://geobench.example.org/generator/"
TRIPLE = re.compile(r'^<([^>]*)> <([^>]*)> (?:<([^>]*)>|"([^"]*)"(?:\^\^<[^>]*>)?) \.$')


def namespace(dataset_name):
    return BASE + dataset_name[0].lower() + dataset_name[1:] + "/"


def load_dataset(path, ns):
    """Returns {feature IRI: (geometry, set of tag keys)}."""
    import shapely.wkt

    geometry_of, wkt_of, tags_of, key_of = {}, {}, defaultdict(set), {}
    with open(path) as f:
        for line in f:
            m = TRIPLE.match(line.strip())
            if not m:
                raise SystemExit(f"{path}: unparsable line {line!r}")
            s, p, o_iri, o_lit = m.groups()
            if p == ns + "hasGeometry":
                geometry_of[s] = o_iri
            elif p == ns + "asWKT":
                wkt_of[s] = o_lit
            elif p == ns + "hasTag":
                tags_of[s].add(o_iri)
            elif p == ns + "hasKey":
                key_of[s] = o_lit
    out = {}
    for feature, g in geometry_of.items():
        text = wkt_of[g]
        if text.startswith("<"):
            text = text[text.index(">") + 1:].strip()
        out[feature] = (shapely.wkt.loads(text), {key_of[t] for t in tags_of[feature]})
    return out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--geobench", required=True)
    parser.add_argument("-n", type=int, default=64)
    parser.add_argument("-k", type=int, default=5)
    args = parser.parse_args()
    common.require_modules("shapely")
    import shapely
    from shapely.strtree import STRtree

    tests = {"Intersects": shapely.intersects, "Within": shapely.within, "Touches": shapely.touches}
    failures = 0
    with tempfile.TemporaryDirectory(prefix="geobench-geos-") as workdir:
        data, manifest_path = common.generate_and_calibrate(args.geobench, workdir, args.n, args.k)
        with open(data + f"/generator-{args.n}-{args.k}.json") as f:
            sidecar = json.load(f)
        with open(manifest_path) as f:
            manifest = json.load(f)
        datasets = {name: load_dataset(os.path.join(data, info["file"]), namespace(name))
                    for name, info in sidecar["datasets"].items()}

        for q in manifest["instances"]:
            fn = tests[q["function"]]
            if q["kind"] == "selection":
                feats = datasets[q["dataset"]]
                rect = shapely.wkt.loads(q["geom"])
                got = sum(1 for g, keys in feats.values() if str(q["thema"]) in keys and fn(g, rect))
            else:
                left = [g for g, keys in datasets[q["left"]].values() if str(q["thema"]) in keys]
                right = [g for g, keys in datasets[q["right"]].values() if str(q["thema2"]) in keys]
                tree = STRtree(right)
                got = 0
                for g in left:
                    for j in tree.query(g.buffer(1e-6)):
                        got += bool(fn(g, right[j]))
            ok = got == q["expected_count"]
            failures += not ok
            print(f"{q['id']:48} expected {q['expected_count']:<8} geos {got:<8} {'ok' if ok else 'DIFFERENT'}")

    print(f"{len(manifest['instances']) - failures} of {len(manifest['instances'])} instances agree with GEOS")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
