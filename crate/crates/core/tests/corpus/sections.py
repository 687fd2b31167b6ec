import os
import sys

# Configuration

DEFAULTS = {"verbose": False, "depth": 3}

# Parsing
def parse(argv):
    opts = dict(DEFAULTS)
    for arg in argv:
        if arg == "-v":
            opts["verbose"] = True
        elif arg.startswith("--depth="):
            opts["depth"] = int(arg.split("=", 1)[1])
    return opts

# Walking the tree

def walk(root, depth):
    if depth < 0:
        return
    for name in sorted(os.listdir(root)):
        path = os.path.join(root, name)
        yield path
        if os.path.isdir(path):
            yield from walk(path, depth - 1)


def main():
    opts = parse(sys.argv[1:])
    for p in walk(".", opts["depth"]):
        print(p)
