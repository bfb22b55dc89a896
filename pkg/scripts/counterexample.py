"""Print the term lists of the non-central product x2 x3 on the UP UP DOWN block."""

import json

from wbalg.center import reproduce_counterexample


def main():
    rep = reproduce_counterexample()
    for rec in rep.records:
        print(f"{rec.status:>5}  {rec.relation}")
    print(json.dumps(rep.data, indent=2, ensure_ascii=False))
    raise SystemExit(0 if rep.passed else 1)


if __name__ == "__main__":
    main()
