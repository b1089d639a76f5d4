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


"""Helpers shared by the end-to-end scripts."""

import json
import os
import subprocess
import sys
import time

SKIP = 77


def require_modules(*names):
    missing = []
    for name in names:
        try:
            __import__(name)
        except ImportError:
            missing.append(name)
    if missing:
        print("SKIP: python modules not installed: " + ", ".join(missing))
        sys.exit(SKIP)


def geobench(binary, *args, check=True):
    proc = subprocess.run([binary, *args], capture_output=True, text=True)
    if check and proc.returncode != 0:
        sys.stderr.write(proc.stdout + proc.stderr)
        raise SystemExit(f"geobench {args[0]} failed with exit {proc.returncode}")
    return proc


def generate_and_calibrate(binary, workdir, n, k, seed=0):
    data = os.path.join(workdir, "data")
    manifest = os.path.join(workdir, "workload.json")
    geobench(binary, "generate", "-n", str(n), "-k", str(k), "--seed", str(seed), "-o", data)
    geobench(binary, "calibrate", "--from", data, "-o", manifest)
    return data, manifest


class ReferenceEndpoint:
    """Runs reference_endpoint.py on a free port for the life of a with-block."""

    def __init__(self, files, workdir, timeout=300):
        self.files = files
        self.port_file = os.path.join(workdir, "endpoint.port")
        self.timeout = timeout
        self.proc = None
        self.port = None

    def __enter__(self):
        script = os.path.join(os.path.dirname(os.path.abspath(__file__)), "reference_endpoint.py")
        self.proc = subprocess.Popen([sys.executable, script, "--port-file", self.port_file, *self.files],
                                     stdout=subprocess.DEVNULL)
        deadline = time.monotonic() + self.timeout
        while not os.path.exists(self.port_file):
            if self.proc.poll() is not None:
                raise SystemExit("reference endpoint exited during start-up")
            if time.monotonic() > deadline:
                self.proc.kill()
                raise SystemExit("reference endpoint did not start")
            time.sleep(0.2)
        with open(self.port_file) as f:
            self.port = int(f.read())
        return self

    def __exit__(self, *exc):
        self.proc.terminate()
        self.proc.wait(timeout=30)

    def write_config(self, path, request_timeout_secs=600):
        with open(path, "w") as f:
            json.dump({"label": "reference", "query_url": f"http://127.0.0.1:{self.port}/sparql",
                       "dialect": "geosparql", "request_timeout_secs": request_timeout_secs}, f)
        return path
