"""Reproduce the three-variable toy instance and print the verdict."""

from __future__ import annotations

from hfe_alias.toy import run_toy


def main() -> None:
    v = run_toy()
    for line in v.lines:
        print(line)
    print()
    print("right-hand sides by convention (ints, power-basis digits):")
    for conv, rhs in v.rhs_by_convention.items():
        print(f"  {conv}: {rhs}")


if __name__ == "__main__":
    main()
