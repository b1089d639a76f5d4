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


"""Minimal SPARQL-protocol endpoint for end-to-end checks.

Loads N-Triples files into an in-memory rdflib graph and answers queries over
HTTP. GeoSPARQL (geof:sf*) and stSPARQL (strdf:*) topological functions are
evaluated with shapely, which wraps GEOS, so results are independent of the
geobench geometry code.

Usage: reference_endpoint.py [--port P] [--port-file F] FILE.nt ...
"""

import argparse
import functools
import os
import sys
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer
from urllib.parse import parse_qs, urlparse

import rdflib
import shapely
import shapely.wkt
from rdflib.plugins.sparql import sparql as rdflib_sparql
from rdflib.plugins.sparql.operators import register_custom_function

GEOF = "http://www.opengis.net/def/function/geosparql/"
STRDF = "http://strdf.di.uoa.gr/ontology#"

PREDICATES = {
    "Intersects": shapely.intersects,
    "Within": shapely.within,
    "Contains": shapely.contains,
    "Touches": shapely.touches,
    "Overlaps": shapely.overlaps,
    "Crosses": shapely.crosses,
    "Disjoint": shapely.disjoint,
    "Equals": shapely.equals,
}


@functools.lru_cache(maxsize=None)
def parse_wkt(text):
    text = text.strip()
    if text.startswith("<"):
        text = text[text.index(">") + 1:].strip()
    return shapely.wkt.loads(text)


def make_function(test):
    def fn(a, b):
        return rdflib.Literal(bool(test(parse_wkt(str(a)), parse_wkt(str(b)))))
    return fn


def allow_shared_prefix_iris():
    # rdflib keeps one prefix per namespace IRI, so "PREFIX ns1: <x> PREFIX
    # ns2: <x>" loses ns1. Keep a plain prefix table instead.
    def bind(self, prefix, uri):
        self.__dict__.setdefault("prefix_table", {})[prefix or ""] = str(uri)
        self.namespace_manager.bind(prefix, uri, replace=True)

    def resolve(self, prefix, localname):
        ns = self.__dict__.get("prefix_table", {}).get(prefix or "")
        if ns is None:
            raise Exception("Unknown namespace prefix : %s" % prefix)
        return rdflib.URIRef(ns + (localname or ""))

    rdflib_sparql.Prologue.bind = bind
    rdflib_sparql.Prologue.resolvePName = resolve


def register_functions():
    for name, test in PREDICATES.items():
        register_custom_function(rdflib.URIRef(GEOF + "sf" + name), make_function(test))
        lower = name[0].lower() + name[1:]
        register_custom_function(rdflib.URIRef(STRDF + lower), make_function(test))


class Handler(BaseHTTPRequestHandler):
    graph = None
    lock = threading.Lock()

    def log_message(self, fmt, *args):
        pass

    def answer(self, query):
        if not query:
            self.reply(400, "text/plain", b"missing query")
            return
        try:
            with self.lock:
                result = self.graph.query(query)
                body = result.serialize(format="json")
        except Exception as e:  # report parse/evaluation problems as HTTP 400
            self.reply(400, "text/plain", str(e).encode())
            return
        self.reply(200, "application/sparql-results+json", body)

    def reply(self, status, content_type, body):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        params = parse_qs(urlparse(self.path).query)
        self.answer(params.get("query", [""])[0])

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        body = self.rfile.read(length).decode("utf-8")
        ctype = self.headers.get("Content-Type", "")
        if ctype.startswith("application/sparql-query"):
            self.answer(body)
        else:
            self.answer(parse_qs(body).get("query", [""])[0])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--port", type=int, default=0)
    parser.add_argument("--port-file")
    parser.add_argument("files", nargs="+")
    args = parser.parse_args()

    allow_shared_prefix_iris()
    register_functions()
    graph = rdflib.Graph()
    for f in args.files:
        graph.parse(f, format="nt")
    Handler.graph = graph

    server = HTTPServer(("127.0.0.1", args.port), Handler)
    port = server.server_address[1]
    if args.port_file:
        with open(args.port_file + ".tmp", "w") as out:
            out.write(str(port))
        os.replace(args.port_file + ".tmp", args.port_file)
    print(f"listening on {port} with {len(graph)} triples", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


if __name__ == "__main__":
    sys.exit(main())
