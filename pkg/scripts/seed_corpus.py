#!/usr/bin/env python3
"""Materialize the seeded-bug corpus under corpus/.

Every entry below records the *fixed* program; the buggy variant is derived
by a targeted text substitution, so fix.patch is exactly the inverse of the
seeded fault.  Each bug ships its own test suite with at least one test that
fails on the buggy program, and extra tests chosen to break the plausible
impostor patches that are scheduled before the intended fix.

Run from the repository root:

    python3 scripts/seed_corpus.py [--verify]
"""

from __future__ import annotations

import argparse
import pathlib
import sys
import textwrap

from minij_repair.diffs import make_patch

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def mj(text: str) -> str:
    """Dedent a triple-quoted source block and normalize the final newline."""
    out = textwrap.dedent(text)
    if out.startswith("\n"):
        out = out[1:]
    if not out.endswith("\n"):
        out += "\n"
    return out


# Each bug: id, pattern id of the intended fix, fixed sources, substitutions
# (path, old, new) that *introduce* the fault, suite text, and the buggy
# lines as (path, unique substring of the line in the buggy text).
BUGS: list[dict] = []


def bug(**kw) -> None:
    BUGS.append(kw)


# ---------------------------------------------------------------- FP1

bug(
    id="fp01",
    pattern="FP1",
    files={"src/Meter.mj": mj("""
        class Shape {
        }
        class Rect extends Shape {
            int w;
            int h;
            Rect(int w0, int h0) {
                this.w = w0;
                this.h = h0;
            }
            int area() {
                return this.w * this.h;
            }
        }
        class Circle extends Shape {
        }
        class Meter {
            int rectArea(Shape s) {
                int out = 0;
                if (s instanceof Rect) {
                    Rect r = (Rect) s;
                    out = r.area();
                }
                return out;
            }
        }
    """)},
    mutate=[("src/Meter.mj",
             "        if (s instanceof Rect) {\n"
             "            Rect r = (Rect) s;\n"
             "            out = r.area();\n"
             "        }\n",
             "        Rect r = (Rect) s;\n"
             "        out = r.area();\n")],
    lines=[("src/Meter.mj", "Rect r = (Rect) s;")],
    suite=mj("""
        class MeterTest {
            void test_rect_area() {
                Meter m = new Meter();
                assert(m.rectArea(new Rect(3, 4)) == 12);
            }
            void test_rect_area_again() {
                Meter m = new Meter();
                assert(m.rectArea(new Rect(2, 5)) == 10);
            }
            void test_circle_is_zero() {
                Meter m = new Meter();
                Circle c = new Circle();
                assert(m.rectArea(c) == 0);
            }
        }
    """),
)

# ---------------------------------------------------------------- FP2.x

bug(
    id="fp02_1",
    pattern="FP2.1",
    files={"src/Keeper.mj": mj("""
        class Box {
            int val;
            Box(int v) {
                this.val = v;
            }
        }
        class Keeper {
            int total;
            void add(Box b) {
                if (b != null) {
                    this.total = this.total + b.val;
                }
            }
        }
    """)},
    mutate=[("src/Keeper.mj",
             "        if (b != null) {\n"
             "            this.total = this.total + b.val;\n"
             "        }\n",
             "        this.total = this.total + b.val;\n")],
    lines=[("src/Keeper.mj", "this.total = this.total + b.val;")],
    suite=mj("""
        class KeeperTest {
            void test_adds() {
                Keeper k = new Keeper();
                k.add(new Box(3));
                k.add(new Box(4));
                assert(k.total == 7);
            }
            void test_null_is_ignored() {
                Keeper k = new Keeper();
                k.add(null);
                assert(k.total == 0);
            }
            void test_single() {
                Keeper k = new Keeper();
                k.add(new Box(5));
                assert(k.total == 5);
            }
        }
    """),
)

bug(
    id="fp02_2",
    pattern="FP2.2",
    files={"src/Sheet.mj": mj("""
        class Row {
            int width;
            Row(int w) {
                this.width = w;
            }
        }
        class Sheet {
            int widthOf(Row r) {
                if (r == null) {
                    return 0;
                }
                return r.width;
            }
        }
    """)},
    mutate=[("src/Sheet.mj",
             "        if (r == null) {\n"
             "            return 0;\n"
             "        }\n"
             "        return r.width;\n",
             "        return r.width;\n")],
    lines=[("src/Sheet.mj", "return r.width;")],
    suite=mj("""
        class SheetTest {
            void test_width() {
                Sheet s = new Sheet();
                assert(s.widthOf(new Row(7)) == 7);
            }
            void test_null_row() {
                Sheet s = new Sheet();
                assert(s.widthOf(null) == 0);
            }
            void test_other_width() {
                Sheet s = new Sheet();
                assert(s.widthOf(new Row(2)) == 2);
            }
        }
    """),
)

bug(
    id="fp02_3",
    pattern="FP2.3",
    files={"src/Panel.mj": mj("""
        class Light {
            boolean on;
        }
        class Panel {
            int flips;
            void toggle(Light l) {
                if (l == null) {
                    return;
                }
                l.on = !l.on;
                this.flips = this.flips + 1;
            }
        }
    """)},
    mutate=[("src/Panel.mj",
             "        if (l == null) {\n"
             "            return;\n"
             "        }\n"
             "        l.on = !l.on;\n",
             "        l.on = !l.on;\n")],
    lines=[("src/Panel.mj", "l.on = !l.on;")],
    suite=mj("""
        class PanelTest {
            void test_toggle() {
                Panel p = new Panel();
                Light li = new Light();
                p.toggle(li);
                assert(li.on);
                assert(p.flips == 1);
                p.toggle(li);
                assert(!li.on);
                assert(p.flips == 2);
            }
            void test_null_does_not_count() {
                Panel p = new Panel();
                p.toggle(null);
                assert(p.flips == 0);
            }
        }
    """),
)

bug(
    id="fp02_4",
    pattern="FP2.4",
    files={"src/Teller.mj": mj("""
        class Slot {
            int amount;
            Slot(int a) {
                this.amount = a;
            }
        }
        class Teller {
            int seen;
            int sum(Slot[] slots) {
                int total = 0;
                int i = 0;
                while (i < slots.length) {
                    Slot s = slots[i];
                    i = i + 1;
                    if (s == null) {
                        continue;
                    }
                    total = total + s.amount;
                    this.seen = this.seen + 1;
                }
                return total;
            }
        }
    """)},
    mutate=[("src/Teller.mj",
             "            if (s == null) {\n"
             "                continue;\n"
             "            }\n"
             "            total = total + s.amount;\n",
             "            total = total + s.amount;\n")],
    lines=[("src/Teller.mj", "total = total + s.amount;")],
    suite=mj("""
        class TellerTest {
            void test_skips_holes() {
                Teller t = new Teller();
                Slot[] xs = new Slot[3];
                xs[0] = new Slot(2);
                xs[2] = new Slot(3);
                assert(t.sum(xs) == 5);
                assert(t.seen == 2);
            }
            void test_full() {
                Teller t = new Teller();
                Slot[] xs = new Slot[2];
                xs[0] = new Slot(4);
                xs[1] = new Slot(1);
                assert(t.sum(xs) == 5);
                assert(t.seen == 2);
            }
            void test_all_holes() {
                Teller t = new Teller();
                Slot[] xs = new Slot[1];
                assert(t.sum(xs) == 0);
                assert(t.seen == 0);
            }
        }
    """),
)

bug(
    id="fp02_5",
    pattern="FP2.5",
    files={"src/Badge.mj": mj("""
        class Name {
            String text;
            Name(String t) {
                this.text = t;
            }
        }
        class Badge {
            String label;
            Badge() {
                this.label = "guest";
            }
            Name fallback() {
                return new Name(this.label);
            }
            String show(Name n) {
                if (n == null) {
                    n = new Name(this.label);
                }
                return n.text;
            }
        }
    """)},
    mutate=[("src/Badge.mj",
             "        if (n == null) {\n"
             "            n = new Name(this.label);\n"
             "        }\n"
             "        return n.text;\n",
             "        return n.text;\n")],
    lines=[("src/Badge.mj", "return n.text;")],
    suite=mj("""
        class BadgeTest {
            void test_named() {
                Badge b = new Badge();
                assert(b.show(new Name("kim")) == "kim");
            }
            void test_null_gets_default() {
                Badge b = new Badge();
                assert(b.show(null) == "guest");
            }
            void test_fallback() {
                Badge b = new Badge();
                assert(b.fallback().text == "guest");
            }
        }
    """),
)

# ---------------------------------------------------------------- FP3

bug(
    id="fp03",
    pattern="FP3",
    files={"src/Peeker.mj": mj("""
        class Peeker {
            int at(int[] xs, int i) {
                int out = -1;
                if (i >= 0 && i < xs.length) {
                    out = xs[i];
                }
                return out;
            }
        }
    """)},
    mutate=[("src/Peeker.mj",
             "        if (i >= 0 && i < xs.length) {\n"
             "            out = xs[i];\n"
             "        }\n",
             "        out = xs[i];\n")],
    lines=[("src/Peeker.mj", "out = xs[i];")],
    suite=mj("""
        class PeekerTest {
            void test_hit() {
                Peeker p = new Peeker();
                int[] xs = new int[2];
                xs[0] = 4;
                xs[1] = 7;
                assert(p.at(xs, 1) == 7);
            }
            void test_too_far() {
                Peeker p = new Peeker();
                int[] xs = new int[2];
                xs[0] = 4;
                assert(p.at(xs, 59) == -1);
            }
            void test_negative() {
                Peeker p = new Peeker();
                int[] xs = new int[1];
                xs[0] = 9;
                assert(p.at(xs, -3) == -1);
            }
        }
    """),
)

# ---------------------------------------------------------------- FP4.x

bug(
    id="fp04_1",
    pattern="FP4.1",
    files={"src/Valve.mj": mj("""
        class Valve {
            boolean open;
            int flow;
            void unlock() {
                this.open = true;
            }
            void send(int n) {
                this.unlock();
                this.flow = this.flow + n;
            }
        }
    """)},
    mutate=[("src/Valve.mj",
             "        this.unlock();\n"
             "        this.flow = this.flow + n;\n",
             "        this.flow = this.flow + n;\n")],
    lines=[("src/Valve.mj", "this.flow = this.flow + n;")],
    suite=mj("""
        class ValveTest {
            void test_send_opens() {
                Valve v = new Valve();
                v.send(4);
                assert(v.open);
                assert(v.flow == 4);
            }
            void test_send_twice() {
                Valve v = new Valve();
                v.send(2);
                v.send(3);
                assert(v.flow == 5);
            }
            void test_unlock_alone() {
                Valve v = new Valve();
                v.unlock();
                assert(v.open);
                assert(v.flow == 0);
            }
        }
    """),
)

bug(
    id="fp04_2",
    pattern="FP4.2",
    files={"src/Safe.mj": mj("""
        class Safe {
            int total;
            void feed(int[] xs, int i) {
                try {
                    this.total = this.total + xs[i];
                } catch (Exception e) {
                }
            }
        }
    """)},
    mutate=[("src/Safe.mj",
             "        try {\n"
             "            this.total = this.total + xs[i];\n"
             "        } catch (Exception e) {\n"
             "        }\n",
             "        this.total = this.total + xs[i];\n")],
    lines=[("src/Safe.mj", "this.total = this.total + xs[i];")],
    suite=mj("""
        class SafeTest {
            void test_feeds() {
                Safe s = new Safe();
                int[] xs = new int[2];
                xs[0] = 5;
                xs[1] = 7;
                s.feed(xs, 0);
                assert(s.total == 5);
                s.feed(xs, 1);
                assert(s.total == 12);
            }
            void test_out_of_bounds() {
                Safe s = new Safe();
                int[] xs = new int[1];
                xs[0] = 4;
                s.feed(xs, 0);
                s.feed(xs, 8);
                assert(s.total == 4);
            }
            void test_null_array() {
                Safe s = new Safe();
                s.feed(null, 0);
                assert(s.total == 0);
            }
        }
    """),
)

bug(
    id="fp04_3",
    pattern="FP4.3",
    files={"src/Gate.mj": mj("""
        class Gate {
            int passed;
            int denied;
            void admit(boolean ok) {
                if (!ok) {
                    this.denied = this.denied + 1;
                    return;
                }
                this.passed = this.passed + 1;
            }
        }
    """)},
    mutate=[("src/Gate.mj",
             "            this.denied = this.denied + 1;\n"
             "            return;\n",
             "            this.denied = this.denied + 1;\n")],
    lines=[("src/Gate.mj", "this.denied = this.denied + 1;")],
    suite=mj("""
        class GateTest {
            void test_denied() {
                Gate g = new Gate();
                g.admit(false);
                assert(g.denied == 1);
                assert(g.passed == 0);
            }
            void test_admitted() {
                Gate g = new Gate();
                g.admit(true);
                assert(g.passed == 1);
                assert(g.denied == 0);
            }
            void test_denied_twice() {
                Gate g = new Gate();
                g.admit(false);
                g.admit(false);
                assert(g.denied == 2);
                assert(g.passed == 0);
            }
        }
    """),
)

bug(
    id="fp04_4",
    pattern="FP4.4",
    files={"src/Pulse.mj": mj("""
        class Pulse {
            int reading;
            boolean live;
            int beats;
            void record(int sample) {
                if (this.live) {
                    this.reading = this.reading + sample;
                }
            }
            void start() {
                this.live = true;
            }
            void tick() {
                if (this.live) {
                    this.beats = this.beats + 1;
                }
            }
        }
    """)},
    mutate=[("src/Pulse.mj",
             "        if (this.live) {\n"
             "            this.reading = this.reading + sample;\n"
             "        }\n",
             "        this.reading = this.reading + sample;\n")],
    lines=[("src/Pulse.mj", "this.reading = this.reading + sample;")],
    suite=mj("""
        class PulseTest {
            void test_dead_meter_ignores() {
                Pulse p = new Pulse();
                p.record(4);
                assert(p.reading == 0);
            }
            void test_live_meter_records() {
                Pulse p = new Pulse();
                p.start();
                p.record(4);
                p.record(2);
                assert(p.reading == 6);
            }
            void test_tick() {
                Pulse p = new Pulse();
                p.tick();
                assert(p.beats == 0);
                p.start();
                p.tick();
                assert(p.beats == 1);
            }
        }
    """),
)

# ---------------------------------------------------------------- FP5

bug(
    id="fp05",
    pattern="FP5",
    files={"src/Stamp.mj": mj("""
        class Token {
            int serial;
            Token clone() {
                return this;
            }
        }
        class Stamp extends Token {
            int ink;
            Token clone() {
                Token c = (Stamp) super.clone();
                return c;
            }
        }
    """)},
    mutate=[("src/Stamp.mj",
             "        Token c = (Stamp) super.clone();\n",
             "        Token c = new Stamp();\n")],
    lines=[("src/Stamp.mj", "Token c = new Stamp();")],
    suite=mj("""
        class StampTest {
            void test_clone_keeps_serial() {
                Stamp s = new Stamp();
                s.serial = 9;
                Token t = s.clone();
                assert(t.serial == 9);
            }
            void test_clone_again() {
                Stamp s = new Stamp();
                s.serial = 4;
                assert(s.clone().serial == 4);
            }
            void test_base_clone() {
                Token k = new Token();
                k.serial = 2;
                assert(k.clone().serial == 2);
            }
        }
    """),
)

# ---------------------------------------------------------------- FP6.x

bug(
    id="fp06_1",
    pattern="FP6.1",
    files={"src/Fence.mj": mj("""
        class Fence {
            boolean inside(int x, int lo, int hi) {
                if (x >= lo && x <= hi) {
                    return true;
                }
                return false;
            }
            int clip(int x, int lo, int hi) {
                if (x < lo) {
                    return lo;
                }
                if (x >= lo && x <= hi) {
                    return x;
                }
                return hi;
            }
        }
    """)},
    mutate=[("src/Fence.mj",
             "        if (x >= lo && x <= hi) {\n"
             "            return x;\n",
             "        if (x >= lo && x >= hi) {\n"
             "            return x;\n")],
    lines=[("src/Fence.mj", "if (x >= lo && x >= hi) {")],
    suite=mj("""
        class FenceTest {
            void test_clip_inside() {
                Fence f = new Fence();
                assert(f.clip(5, 1, 9) == 5);
            }
            void test_clip_low() {
                Fence f = new Fence();
                assert(f.clip(0, 1, 9) == 1);
            }
            void test_clip_high() {
                Fence f = new Fence();
                assert(f.clip(12, 1, 9) == 9);
            }
            void test_inside() {
                Fence f = new Fence();
                assert(f.inside(3, 1, 5));
                assert(!f.inside(7, 1, 5));
            }
        }
    """),
)

bug(
    id="fp06_2",
    pattern="FP6.2",
    files={"src/Limiter.mj": mj("""
        class Limiter {
            int keep;
            void take(int v, int cap) {
                if (v >= 0) {
                    this.keep = this.keep + v;
                }
            }
        }
    """)},
    mutate=[("src/Limiter.mj",
             "        if (v >= 0) {\n",
             "        if (v >= 0 && v < cap) {\n")],
    lines=[("src/Limiter.mj", "if (v >= 0 && v < cap) {")],
    suite=mj("""
        class LimiterTest {
            void test_over_cap_still_kept() {
                Limiter m = new Limiter();
                m.take(7, 3);
                assert(m.keep == 7);
            }
            void test_small() {
                Limiter m = new Limiter();
                m.take(2, 9);
                assert(m.keep == 2);
            }
            void test_negative_dropped() {
                Limiter m = new Limiter();
                m.take(-1, 5);
                assert(m.keep == 0);
            }
        }
    """),
)

bug(
    id="fp06_3",
    pattern="FP6.3",
    files={"src/Ticket.mj": mj("""
        class Ticket {
            boolean valid(int day, boolean stamped) {
                if (day <= 30 && stamped) {
                    return true;
                }
                return false;
            }
            boolean ready(boolean stamped) {
                if (stamped) {
                    return true;
                }
                return false;
            }
        }
    """)},
    mutate=[("src/Ticket.mj",
             "        if (day <= 30 && stamped) {\n",
             "        if (day <= 30) {\n")],
    lines=[("src/Ticket.mj", "if (day <= 30) {")],
    suite=mj("""
        class TicketTest {
            void test_fresh_and_stamped() {
                Ticket t = new Ticket();
                assert(t.valid(10, true));
            }
            void test_fresh_unstamped() {
                Ticket t = new Ticket();
                assert(!t.valid(10, false));
            }
            void test_stale_stamped() {
                Ticket t = new Ticket();
                assert(!t.valid(40, true));
            }
            void test_ready() {
                Ticket t = new Ticket();
                assert(t.ready(true));
                assert(!t.ready(false));
            }
        }
    """),
)

# ---------------------------------------------------------------- FP7.x

bug(
    id="fp07_1",
    pattern="FP7.1",
    files={"src/Scaler.mj": mj("""
        class Scaler {
            float half(int v) {
                float h = v;
                h = h / 2;
                return h;
            }
        }
    """)},
    mutate=[("src/Scaler.mj",
             "        float h = v;\n",
             "        int h = v;\n")],
    lines=[("src/Scaler.mj", "int h = v;")],
    suite=mj("""
        class ScalerTest {
            void test_odd() {
                Scaler s = new Scaler();
                assert(s.half(5) == 2.5);
            }
            void test_odd_again() {
                Scaler s = new Scaler();
                assert(s.half(9) == 4.5);
            }
            void test_even() {
                Scaler s = new Scaler();
                assert(s.half(4) == 2.0);
            }
        }
    """),
)

bug(
    id="fp07_2",
    pattern="FP7.2",
    files={"src/Pound.mj": mj("""
        class Animal {
        }
        class Dog extends Animal {
            int bones;
            Dog(int b) {
                this.bones = b;
            }
        }
        class Pup extends Dog {
            Pup(int b) {
                super(b);
            }
        }
        class Pound {
            int bonesOf(Animal a) {
                if (a instanceof Dog) {
                    Dog d = (Dog) a;
                    return d.bones;
                }
                return 0;
            }
        }
    """)},
    mutate=[("src/Pound.mj",
             "            Dog d = (Dog) a;\n",
             "            Dog d = (Pup) a;\n")],
    lines=[("src/Pound.mj", "Dog d = (Pup) a;")],
    suite=mj("""
        class PoundTest {
            void test_dog() {
                Pound p = new Pound();
                assert(p.bonesOf(new Dog(3)) == 3);
            }
            void test_pup() {
                Pound p = new Pound();
                assert(p.bonesOf(new Pup(2)) == 2);
            }
            void test_other_animal() {
                Pound p = new Pound();
                assert(p.bonesOf(new Animal()) == 0);
            }
        }
    """),
)

# ---------------------------------------------------------------- FP8.x

bug(
    id="fp08_1",
    pattern="FP8.1",
    files={"src/Stats.mj": mj("""
        class Stats {
            float ratio(int hits, int total) {
                return (float) hits / total;
            }
        }
    """)},
    mutate=[("src/Stats.mj",
             "        return (float) hits / total;\n",
             "        return hits / total;\n")],
    lines=[("src/Stats.mj", "return hits / total;")],
    suite=mj("""
        class StatsTest {
            void test_half() {
                Stats s = new Stats();
                assert(s.ratio(1, 2) == 0.5);
            }
            void test_three_quarters() {
                Stats s = new Stats();
                assert(s.ratio(3, 4) == 0.75);
            }
        }
    """),
)

# The first plausible patch casts the dividend instead of the divisor; the
# two fixes are numerically identical, so the intended patch is unreachable
# and the reported repair stays plausible-but-incorrect.
bug(
    id="fp08_2",
    pattern="FP8.2",
    files={"src/Rate.mj": mj("""
        class Rate {
            float per(int count, int slots) {
                return count / (float) slots;
            }
        }
    """)},
    mutate=[("src/Rate.mj",
             "        return count / (float) slots;\n",
             "        return count / slots;\n")],
    lines=[("src/Rate.mj", "return count / slots;")],
    suite=mj("""
        class RateTest {
            void test_quarter() {
                Rate r = new Rate();
                assert(r.per(1, 4) == 0.25);
            }
            void test_mixed() {
                Rate r = new Rate();
                assert(r.per(3, 2) == 1.5);
            }
        }
    """),
)

# Same situation as fp08_2: the dividend cast shadows the float-literal fix.
bug(
    id="fp08_3",
    pattern="FP8.3",
    files={"src/Half.mj": mj("""
        class Half {
            float mid(int a, int b) {
                float m = (a + b) / 2.0;
                return m;
            }
        }
    """)},
    mutate=[("src/Half.mj",
             "        float m = (a + b) / 2.0;\n",
             "        float m = (a + b) / 2;\n")],
    lines=[("src/Half.mj", "float m = (a + b) / 2;")],
    suite=mj("""
        class HalfTest {
            void test_mid() {
                Half h = new Half();
                assert(h.mid(1, 2) == 1.5);
            }
            void test_mid_even() {
                Half h = new Half();
                assert(h.mid(3, 4) == 3.5);
            }
        }
    """),
)

# ---------------------------------------------------------------- FP9.x

bug(
    id="fp09_1",
    pattern="FP9.1",
    files={"src/Counter.mj": mj("""
        class Counter {
            int fact(int n) {
                int f = 1;
                int i = 1;
                while (i <= n) {
                    f = f * i;
                    i = i + 1;
                }
                return f;
            }
        }
    """)},
    mutate=[("src/Counter.mj",
             "        int i = 1;\n",
             "        int i = 0;\n")],
    lines=[("src/Counter.mj", "int i = 0;")],
    suite=mj("""
        class CounterTest {
            void test_three() {
                Counter c = new Counter();
                assert(c.fact(3) == 6);
            }
            void test_one() {
                Counter c = new Counter();
                assert(c.fact(1) == 1);
            }
            void test_four() {
                Counter c = new Counter();
                assert(c.fact(4) == 24);
            }
            void test_zero() {
                Counter c = new Counter();
                assert(c.fact(0) == 1);
            }
        }
    """),
)

bug(
    id="fp09_2",
    pattern="FP9.2",
    files={"src/Labeler.mj": mj("""
        class Labeler {
            String tag;
            Labeler(String t) {
                this.tag = t;
            }
            String wrap(String body) {
                return this.tag + ":" + body;
            }
            String head() {
                return this.tag + "!";
            }
        }
    """)},
    mutate=[("src/Labeler.mj",
             "        return this.tag + \":\" + body;\n",
             "        return \"x\" + \":\" + body;\n")],
    lines=[("src/Labeler.mj", "return \"x\" + \":\" + body;")],
    suite=mj("""
        class LabelerTest {
            void test_wrap() {
                Labeler l = new Labeler("lab");
                assert(l.wrap("b") == "lab:b");
            }
            void test_head() {
                Labeler l = new Labeler("lab");
                assert(l.head() == "lab!");
            }
            void test_wrap_empty() {
                Labeler l = new Labeler("lab");
                assert(l.wrap("") == "lab:");
            }
        }
    """),
)

# ---------------------------------------------------------------- FP10.x

bug(
    id="fp10_1",
    pattern="FP10.1",
    files={"src/Span.mj": mj("""
        class Span {
            int min(int a, int b) {
                if (a < b) {
                    return a;
                }
                return b;
            }
            int max(int a, int b) {
                if (a < b) {
                    return b;
                }
                return a;
            }
            int width(int a, int b) {
                return this.max(a, b) - this.min(a, b);
            }
        }
    """)},
    mutate=[("src/Span.mj",
             "        return this.max(a, b) - this.min(a, b);\n",
             "        return this.min(a, b) - this.min(a, b);\n")],
    lines=[("src/Span.mj", "return this.min(a, b) - this.min(a, b);")],
    suite=mj("""
        class SpanTest {
            void test_forward() {
                Span s = new Span();
                assert(s.width(2, 5) == 3);
            }
            void test_backward() {
                Span s = new Span();
                assert(s.width(5, 2) == 3);
            }
            void test_flat() {
                Span s = new Span();
                assert(s.width(4, 4) == 0);
            }
            void test_min_max() {
                Span s = new Span();
                assert(s.max(3, 1) == 3);
                assert(s.min(3, 1) == 1);
            }
        }
    """),
)

bug(
    id="fp10_2",
    pattern="FP10.2",
    files={"src/Cart.mj": mj("""
        class Cart {
            int goods;
            int discount;
            int total() {
                int t = this.goods - this.discount;
                if (t < 0) {
                    return 0;
                }
                return t;
            }
            boolean free() {
                if (this.total() == 0) {
                    return true;
                }
                return false;
            }
            int shipping() {
                return this.quote(this.total());
            }
            int quote(int base) {
                return base + 3;
            }
        }
    """)},
    mutate=[("src/Cart.mj",
             "        return this.quote(this.total());\n",
             "        return this.quote(this.goods);\n")],
    lines=[("src/Cart.mj", "return this.quote(this.goods);")],
    suite=mj("""
        class CartTest {
            void test_shipping() {
                Cart c = new Cart();
                c.goods = 4;
                c.discount = 1;
                assert(c.shipping() == 6);
            }
            void test_shipping_clamped() {
                Cart c = new Cart();
                c.goods = 2;
                c.discount = 5;
                assert(c.shipping() == 3);
            }
            void test_free() {
                Cart c = new Cart();
                c.goods = 3;
                c.discount = 3;
                assert(c.free());
                assert(c.total() == 0);
            }
        }
    """),
)

bug(
    id="fp10_3",
    pattern="FP10.3",
    files={"src/Joiner.mj": mj("""
        class Joiner {
            String join(String a, String b) {
                return a + "," + b;
            }
            String join(String a) {
                return a + ",";
            }
            String row(String cell) {
                return this.join(cell);
            }
        }
    """)},
    mutate=[("src/Joiner.mj",
             "        return this.join(cell);\n",
             "        return this.join(cell, cell);\n")],
    lines=[("src/Joiner.mj", "return this.join(cell, cell);")],
    suite=mj("""
        class JoinerTest {
            void test_row() {
                Joiner j = new Joiner();
                assert(j.row("ab") == "ab,");
            }
            void test_pair() {
                Joiner j = new Joiner();
                assert(j.join("x", "y") == "x,y");
            }
            void test_single() {
                Joiner j = new Joiner();
                assert(j.join("z") == "z,");
            }
        }
    """),
)

bug(
    id="fp10_4",
    pattern="FP10.4",
    files={"src/Painter.mj": mj("""
        class Painter {
            int shade(int base) {
                return base * 2;
            }
            int shade(int base, int tint) {
                return base * 2 + tint;
            }
            int render(int b, int t) {
                return this.shade(b, t);
            }
        }
    """)},
    mutate=[("src/Painter.mj",
             "        return this.shade(b, t);\n",
             "        return this.shade(b);\n")],
    lines=[("src/Painter.mj", "return this.shade(b);")],
    suite=mj("""
        class PainterTest {
            void test_render() {
                Painter p = new Painter();
                assert(p.render(3, 4) == 10);
            }
            void test_render_again() {
                Painter p = new Painter();
                assert(p.render(1, 5) == 7);
            }
            void test_shades() {
                Painter p = new Painter();
                assert(p.shade(2) == 4);
                assert(p.shade(2, 1) == 5);
            }
        }
    """),
)

# ---------------------------------------------------------------- FP11.x

bug(
    id="fp11_1",
    pattern="FP11.1",
    files={"src/Pick.mj": mj("""
        class Pick {
            int max(int a, int b) {
                if (a < b) {
                    return b;
                }
                return a;
            }
        }
    """)},
    mutate=[("src/Pick.mj",
             "        if (a < b) {\n",
             "        if (a > b) {\n")],
    lines=[("src/Pick.mj", "if (a > b) {")],
    suite=mj("""
        class PickTest {
            void test_second_larger() {
                Pick p = new Pick();
                assert(p.max(1, 2) == 2);
            }
            void test_first_larger() {
                Pick p = new Pick();
                assert(p.max(5, 3) == 5);
            }
            void test_equal() {
                Pick p = new Pick();
                assert(p.max(4, 4) == 4);
            }
        }
    """),
)

bug(
    id="fp11_2",
    pattern="FP11.2",
    files={"src/Biller.mj": mj("""
        class Biller {
            int charge(int rate, int rebate, int hours) {
                return (rate - rebate) * hours;
            }
        }
    """)},
    mutate=[("src/Biller.mj",
             "        return (rate - rebate) * hours;\n",
             "        return rate - rebate * hours;\n")],
    lines=[("src/Biller.mj", "return rate - rebate * hours;")],
    suite=mj("""
        class BillerTest {
            void test_charge() {
                Biller b = new Biller();
                assert(b.charge(10, 2, 3) == 24);
            }
            void test_charge_small() {
                Biller b = new Biller();
                assert(b.charge(5, 1, 2) == 8);
            }
            void test_full_rebate() {
                Biller b = new Biller();
                assert(b.charge(7, 7, 9) == 0);
            }
        }
    """),
)

bug(
    id="fp11_3",
    pattern="FP11.3",
    files={"src/Scale.mj": mj("""
        class Item {
            int weight;
            Item(int w) {
                this.weight = w;
            }
        }
        class Heavy extends Item {
            Heavy(int w) {
                super(w);
            }
        }
        class Scale {
            int weigh(Item it) {
                if (it != null) {
                    return it.weight;
                }
                return 0;
            }
        }
    """)},
    mutate=[("src/Scale.mj",
             "        if (it != null) {\n",
             "        if (it instanceof Heavy) {\n")],
    lines=[("src/Scale.mj", "if (it instanceof Heavy) {")],
    suite=mj("""
        class ScaleTest {
            void test_plain_item() {
                Scale s = new Scale();
                assert(s.weigh(new Item(5)) == 5);
            }
            void test_heavy_item() {
                Scale s = new Scale();
                assert(s.weigh(new Heavy(3)) == 3);
            }
            void test_nothing() {
                Scale s = new Scale();
                assert(s.weigh(null) == 0);
            }
        }
    """),
)

# ---------------------------------------------------------------- FP12

bug(
    id="fp12",
    pattern="FP12",
    files={"src/Gauge.mj": mj("""
        class Gauge {
            int best;
            int worst;
            int spread() {
                int d = this.best - this.worst;
                if (d < 0) {
                    return 0;
                }
                return d;
            }
            boolean flat() {
                if (this.spread() == 0) {
                    return true;
                }
                return false;
            }
            int report() {
                return this.spread();
            }
        }
    """)},
    mutate=[("src/Gauge.mj",
             "        return this.spread();\n    }\n}",
             "        return this.best;\n    }\n}")],
    lines=[("src/Gauge.mj", "return this.best;")],
    suite=mj("""
        class GaugeTest {
            void test_report() {
                Gauge g = new Gauge();
                g.best = 7;
                g.worst = 2;
                assert(g.report() == 5);
            }
            void test_report_clamped() {
                Gauge g = new Gauge();
                g.best = 3;
                g.worst = 9;
                assert(g.report() == 0);
            }
            void test_flat() {
                Gauge g = new Gauge();
                g.best = 4;
                g.worst = 4;
                assert(g.flat());
            }
        }
    """),
)

# ---------------------------------------------------------------- FP13.x

bug(
    id="fp13_1",
    pattern="FP13.1",
    files={"src/Ledger.mj": mj("""
        class Ledger {
            int diff(int gross, int net) {
                int margin = gross - net;
                return margin;
            }
        }
    """)},
    mutate=[("src/Ledger.mj",
             "        int margin = gross - net;\n",
             "        int margin = gross - gross;\n")],
    lines=[("src/Ledger.mj", "int margin = gross - gross;")],
    suite=mj("""
        class LedgerTest {
            void test_diff() {
                Ledger l = new Ledger();
                assert(l.diff(10, 3) == 7);
            }
            void test_diff_small() {
                Ledger l = new Ledger();
                assert(l.diff(5, 2) == 3);
            }
            void test_diff_zero() {
                Ledger l = new Ledger();
                assert(l.diff(4, 4) == 0);
            }
        }
    """),
)

bug(
    id="fp13_2",
    pattern="FP13.2",
    files={"src/Tank.mj": mj("""
        class Tank {
            int cap;
            int used;
            Tank(int c) {
                this.cap = c;
                this.used = 0;
            }
            void fill(int n) {
                this.used = this.used + n;
            }
            int room(int extra) {
                int free = this.cap - this.used;
                return free - extra;
            }
        }
    """)},
    mutate=[("src/Tank.mj",
             "        int free = this.cap - this.used;\n",
             "        int free = this.cap - extra;\n")],
    lines=[("src/Tank.mj", "int free = this.cap - extra;")],
    suite=mj("""
        class TankTest {
            void test_room() {
                Tank t = new Tank(10);
                t.fill(4);
                assert(t.room(1) == 5);
            }
            void test_room_no_extra() {
                Tank t = new Tank(10);
                t.fill(4);
                assert(t.room(0) == 6);
            }
            void test_room_after_refill() {
                Tank t = new Tank(10);
                t.fill(4);
                t.fill(2);
                assert(t.room(1) == 3);
            }
        }
    """),
)

# ---------------------------------------------------------------- FP14

bug(
    id="fp14",
    pattern="FP14",
    files={"src/Pile.mj": mj("""
        class Pile {
            int[] items;
            int count;
            Pile(int cap) {
                this.items = new int[cap];
                this.count = 0;
            }
            void push(int v) {
                this.items[this.count] = v;
                this.count = this.count + 1;
            }
            int pop() {
                this.count = this.count - 1;
                int v = this.items[this.count];
                return v;
            }
        }
    """)},
    mutate=[("src/Pile.mj",
             "        this.count = this.count - 1;\n"
             "        int v = this.items[this.count];\n",
             "        int v = this.items[this.count];\n"
             "        this.count = this.count - 1;\n")],
    lines=[("src/Pile.mj", "int v = this.items[this.count];")],
    suite=mj("""
        class PileTest {
            void test_single() {
                Pile p = new Pile(1);
                p.push(7);
                assert(p.pop() == 7);
            }
            void test_lifo() {
                Pile p = new Pile(2);
                p.push(5);
                p.push(9);
                assert(p.pop() == 9);
                assert(p.pop() == 5);
                assert(p.count == 0);
            }
        }
    """),
)

# ---------------------------------------------------------------- FP15.x

bug(
    id="fp15_1",
    pattern="FP15.1",
    files={"src/Logbook.mj": mj("""
        class Logbook {
            int entries;
            void reset() {
                this.entries = 0;
            }
            void log() {
                this.entries = this.entries + 1;
            }
        }
    """)},
    mutate=[("src/Logbook.mj",
             "    void log() {\n"
             "        this.entries = this.entries + 1;\n",
             "    void log() {\n"
             "        this.reset();\n"
             "        this.entries = this.entries + 1;\n")],
    lines=[("src/Logbook.mj", "this.reset();")],
    suite=mj("""
        class LogbookTest {
            void test_single_entry() {
                Logbook b = new Logbook();
                b.log();
                assert(b.entries == 1);
            }
            void test_entries_accumulate() {
                Logbook b = new Logbook();
                b.log();
                b.log();
                assert(b.entries == 2);
            }
            void test_reset() {
                Logbook b = new Logbook();
                b.log();
                b.reset();
                assert(b.entries == 0);
            }
        }
    """),
)

bug(
    id="fp15_2",
    pattern="FP15.2",
    files={"src/Legacy.mj": mj("""
        class Legacy {
            int surcharge(int amount) {
                return 0;
            }
            int bill(int amount) {
                return amount + this.surcharge(amount);
            }
        }
    """)},
    mutate=[("src/Legacy.mj",
             "        return 0;\n",
             "        return amount / 10;\n")],
    lines=[("src/Legacy.mj", "return amount / 10;")],
    suite=mj("""
        class LegacyTest {
            void test_bill_round() {
                Legacy l = new Legacy();
                assert(l.bill(50) == 50);
            }
            void test_bill_small() {
                Legacy l = new Legacy();
                assert(l.bill(9) == 9);
            }
            void test_no_surcharge() {
                Legacy l = new Legacy();
                assert(l.surcharge(100) == 0);
                assert(l.surcharge(7) == 0);
            }
        }
    """),
)


def line_of(text: str, marker: str) -> int:
    """1-based line number of the first line containing `marker`."""
    at = text.index(marker)
    return text.count("\n", 0, at) + 1


def build_bug(spec: dict) -> None:
    root = CORPUS / spec["id"]
    buggy = dict(spec["files"])
    for path, old, new in spec["mutate"]:
        if buggy[path].count(old) != 1:
            raise SystemExit("%s: substitution not unique in %s"
                             % (spec["id"], path))
        buggy[path] = buggy[path].replace(old, new)

    (root / "src").mkdir(parents=True, exist_ok=True)
    (root / "tests").mkdir(parents=True, exist_ok=True)
    for path, text in sorted(buggy.items()):
        (root / path).write_text(text)
    (root / "tests" / "suite.mj").write_text(spec["suite"])

    patch = "".join(
        make_patch(buggy[path], spec["files"][path], path)
        for path in sorted(buggy)
        if buggy[path] != spec["files"][path])
    (root / "fix.patch").write_text(patch)

    lines = [(path, line_of(buggy[path], marker))
             for path, marker in spec["lines"]]
    toml_lines = ", ".join('["%s", %d]' % entry for entry in lines)
    files = ", ".join('"%s"' % p for p in sorted(
        {path for path, _, _ in spec["mutate"]}))
    (root / "bug.toml").write_text(
        'id = "%s"\n'
        'expected_pattern = "%s"\n'
        "buggy_files = [%s]\n"
        "buggy_lines = [%s]\n"
        % (spec["id"], spec["pattern"], files, toml_lines))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--verify", action="store_true",
                    help="load every seeded bug and check its invariants")
    args = ap.parse_args(argv)

    ids = [spec["id"] for spec in BUGS]
    if len(set(ids)) != len(ids):
        raise SystemExit("duplicate bug ids")
    for spec in BUGS:
        build_bug(spec)
    print("seeded %d bugs under %s" % (len(BUGS), CORPUS))

    if args.verify:
        from minij_repair.corpus import load_corpus
        bugs = load_corpus(CORPUS, verify=True)
        print("verified %d bugs" % len(bugs))
    return 0


if __name__ == "__main__":
    sys.exit(main())
