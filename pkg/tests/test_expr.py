import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heatkernel.expr import (
    Bin,
    Call,
    Const,
    ExprEvalError,
    ExprSyntaxError,
    Num,
    Unary,
    Var,
    evaluate,
    free_variables,
    parse,
    to_callable,
    to_str,
)


class TestParse:
    def test_variable(self):
        assert parse("x") == Var("x")
        assert free_variables(parse("x")) == {"x"}

    def test_forcing_expression(self):
        node = parse("(8*pi^2*t+1)*sin(2*pi*x)/(2*sqrt(t))")
        assert free_variables(node) == {"x", "t"}

    def test_combination_value(self):
        node = parse("sin(pi*x) + 0.3*sin(3*pi*x)")
        assert evaluate(node, x=0.5) == pytest.approx(1 - 0.3, abs=1e-15)

    def test_precedence_examples_exact(self):
        assert evaluate(parse("2+3*4^2")) == 50.0
        assert evaluate(parse("-2^2")) == -4.0

    def test_power_right_associative(self):
        assert evaluate(parse("2^3^2")) == 512.0

    def test_unary_in_exponent(self):
        assert evaluate(parse("2^-2")) == 0.25

    def test_determinism(self):
        text = "sin(pi*x)*exp(-t)/(1+x)"
        assert parse(text) == parse(text)

    def test_syntax_error_position(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse("1 + @")
        assert info.value.byte_offset == 4
        with pytest.raises(ExprSyntaxError) as info:
            parse("sin(x")
        assert "')'" in str(info.value)

    def test_unknown_identifier(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse("2*foo")
        assert "foo" in str(info.value)

    def test_arity_error(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse("sin(x, t)")
        assert "argument" in str(info.value)

    def test_function_requires_parens(self):
        with pytest.raises(ExprSyntaxError):
            parse("sin x")

    def test_trailing_garbage(self):
        with pytest.raises(ExprSyntaxError):
            parse("1 2")

    def test_empty_input(self):
        with pytest.raises(ExprSyntaxError):
            parse("")


class TestEvaluate:
    def test_sqrt_times_sine(self):
        assert evaluate(parse("sqrt(t)*sin(2*pi*x)"), x=0.25, t=4.0) == pytest.approx(2.0, abs=1e-15)

    def test_division_by_zero(self):
        with pytest.raises(ExprEvalError):
            evaluate(parse("1/t"), t=0.0)

    def test_forcing_at_quarter(self):
        want = (8 * math.pi**2 + 1) / 2
        got = evaluate(parse("(8*pi^2*t+1)*sin(2*pi*x)/(2*sqrt(t))"), x=0.25, t=1.0)
        assert abs(got - want) <= 4 * math.ulp(want)

    def test_sqrt_negative(self):
        with pytest.raises(ExprEvalError):
            evaluate(parse("sqrt(0-1)"))

    def test_unbound_variable(self):
        with pytest.raises(ExprEvalError):
            evaluate(parse("x+1"))

    def test_overflow_reported(self):
        with pytest.raises(ExprEvalError):
            evaluate(parse("exp(exp(exp(9)))"))

    def test_pow_domain_error(self):
        with pytest.raises(ExprEvalError):
            evaluate(parse("(0-8)^0.5"))

    def test_constants(self):
        assert evaluate(parse("pi")) == math.pi
        assert evaluate(parse("e")) == math.e


class TestToCallable:
    def test_vectorized(self):
        fn = to_callable(parse("sin(pi*x)"), ("x",))
        xs = np.array([0.0, 0.5, 1.0])
        assert fn(xs) == pytest.approx(np.sin(np.pi * xs))

    def test_scalar(self):
        fn = to_callable(parse("x^2"), ("x",))
        assert fn(3.0) == 9.0

    def test_two_variables(self):
        fn = to_callable(parse("sqrt(t)*sin(2*pi*x)"), ("x", "t"))
        assert fn(0.25, 4.0) == pytest.approx(2.0)

    def test_constant_broadcasts(self):
        fn = to_callable(parse("1+0*x"), ("x",))
        out = fn(np.zeros(5))
        assert out.shape == (5,)

    def test_nonfinite_reported(self):
        fn = to_callable(parse("1/x"), ("x",))
        with pytest.raises(ExprEvalError):
            fn(np.array([1.0, 0.0]))


# strategy for parser-generatable ASTs (numbers are non-negative literals;
# negative values arise through unary minus)
def _ast(depth):
    leaf = st.one_of(
        st.builds(Num, st.floats(min_value=0, max_value=1e6, allow_nan=False, width=64)),
        st.sampled_from([Var("x"), Var("t"), Const("pi"), Const("e")]),
    )
    if depth == 0:
        return leaf
    sub = _ast(depth - 1)
    return st.one_of(
        leaf,
        st.builds(Unary, st.just("-"), sub),
        st.builds(Bin, st.sampled_from(["+", "-", "*", "/", "^"]), sub, sub),
        st.builds(Call, st.sampled_from(["sin", "cos", "sinh", "cosh", "exp", "sqrt", "abs"]), sub),
    )


class TestRoundTrip:
    @given(_ast(3))
    @settings(max_examples=300)
    def test_print_parse_identity(self, node):
        assert parse(to_str(node)) == node

    def test_examples(self):
        for text in (
            "-2^2",
            "2^-3",
            "1-2-3",
            "1-(2-3)",
            "-(x*t)",
            "-x*t",
            "sin(pi*x)^2",
            "(x+1)^(t+2)",
        ):
            node = parse(text)
            assert parse(to_str(node)) == node


class TestFuzz:
    def test_random_bytes_never_crash(self):
        rng = np.random.default_rng(12345)
        for _ in range(2000):
            n = int(rng.integers(0, 64))
            text = bytes(rng.integers(0, 256, n, dtype=np.uint8)).decode("utf-8", "replace")
            try:
                parse(text)
            except ExprSyntaxError:
                pass

    def test_token_soup_never_crashes(self):
        rng = np.random.default_rng(999)
        atoms = ["x", "t", "pi", "sin", "(", ")", "+", "-", "*", "/", "^", "1.5", "2", "e", "."]
        for _ in range(2000):
            text = "".join(rng.choice(atoms) for _ in range(int(rng.integers(0, 20))))
            try:
                parse(text)
            except ExprSyntaxError:
                pass

    @given(st.text(max_size=40))
    @settings(max_examples=300)
    def test_arbitrary_text(self, text):
        try:
            parse(text)
        except ExprSyntaxError:
            pass
