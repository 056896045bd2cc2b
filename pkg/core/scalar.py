"""
精确三角乘积标量
形如  有理数 × ∏ sin(πr)^e × ∏ √p^{±1}  的实代数数，渐近维数的载体

规范形：
    - 每个 r 为既约分数且 r ∈ (0, 1/2]，sin(π/2) 并入系数
    - 若某个分母 d 的全部既约余数 {j/d ≤ 1/2} 都出现且指数同号，
      用 ∏ sin(πj/d) = √Φ_d(1) / 2^{φ(d)/2} 吸收进系数与根式
    - 根式按素数存储，指数为 ±1/2，符号与该素数的总指数相同
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath
from sympy import factorint

from core.errors import ParseError
from engine_config import ENGINE_CONFIG

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

_FACTOR_PATTERN = re.compile(r"^(S|R)\((\d+(?:/\d+)?)\)\^(-?\d+(?:/\d+)?)$")


def _fold_angle(r):
    """
    把 sin(πr) 折叠到 (0, 1/2]

    Returns:
        (r', sign): sin(πr) = sign·sin(πr')；sin(πr)=0 时 r' 为 None
    """
    r = Fraction(r) % 2
    sign = 1
    if r >= 1:
        r -= 1
        sign = -1
    if r == 0:
        return None, 0
    if r > HALF:
        r = 1 - r
    return r, sign


def _reduced_residues(d):
    return [Fraction(j, d) for j in range(1, d // 2 + 1) if gcd(j, d) == 1]


def _cyclotomic_at_one(d):
    """Φ_d(1)：d 为素数幂 p^a 时为 p，否则为 1（d ≥ 2）"""
    factors = factorint(d)
    if len(factors) == 1:
        return next(iter(factors))
    return 1


def _prime_valuation(value, p):
    num, den = value.numerator, value.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _prime_powers(value, exponent=Fraction(1)):
    """有理数 value^exponent 的素数指数表"""
    value = Fraction(value)
    powers = {}
    for p, a in factorint(value.numerator).items():
        powers[p] = powers.get(p, 0) + a * exponent
    for p, a in factorint(value.denominator).items():
        powers[p] = powers.get(p, 0) - a * exponent
    return powers


def _canonical(coeff, sines, powers):
    """
    规范化

    Args:
        coeff: 有理系数
        sines: {r: 整数指数}，表示 sin(πr)^e，r 可为任意有理数
        powers: {正整数: 有理指数}，底数可以不是素数

    Returns:
        SineProductScalar: 规范形
    """
    coeff = Fraction(coeff)
    if coeff == 0:
        return SineProductScalar()

    folded = {}
    for r, e in sines.items():
        if e == 0:
            continue
        r, sign = _fold_angle(r)
        if r is None:
            if e < 0:
                raise ZeroDivisionError("sin(πr) = 0 出现在分母中")
            return SineProductScalar()
        if sign < 0 and e % 2:
            coeff = -coeff
        if r == HALF:
            continue
        folded[r] = folded.get(r, 0) + e
    folded = {r: e for r, e in folded.items() if e}

    primes = {}
    for base, s in powers.items():
        s = Fraction(s)
        if s == 0 or base == 1:
            continue
        for p, a in factorint(base).items():
            primes[p] = primes.get(p, 0) + a * s

    # 完整剩余类吸收
    for d in sorted({r.denominator for r in folded}):
        residues = _reduced_residues(d)
        exps = [folded.get(r, 0) for r in residues]
        if all(e > 0 for e in exps):
            e = min(exps)
        elif all(e < 0 for e in exps):
            e = max(exps)
        else:
            continue
        for r in residues:
            folded[r] -= e
            if folded[r] == 0:
                del folded[r]
        coeff *= Fraction(1, 2 ** len(residues)) ** e
        phi = _cyclotomic_at_one(d)
        if phi > 1:
            primes[phi] = primes.get(phi, 0) + Fraction(e, 2)

    surds = {}
    for p, s in primes.items():
        if s.denominator == 1:
            coeff *= Fraction(p) ** int(s)
            continue
        if s.denominator != 2:
            raise ValueError(f"无法表示的根式指数 {p}^{s}")
        total = _prime_valuation(coeff, p) + s
        half = HALF if total > 0 else -HALF
        coeff *= Fraction(p) ** int(s - half)
        surds[p] = half

    return SineProductScalar(
        coeff=coeff,
        sine_factors=tuple(sorted(folded.items())),
        surd_factors=tuple(sorted(surds.items())),
    )


@dataclass(frozen=True)
class SineProductScalar:
    """
    精确标量 coeff × ∏ sin(π r)^e × ∏ √p^{2s}

    直接构造不做规范化，请使用类方法或算术运算得到规范形。
    """

    coeff: Fraction = Fraction(0)
    sine_factors: tuple = ()
    surd_factors: tuple = ()

    # ---------- 构造 ----------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls(coeff=Fraction(1))

    @classmethod
    def rational(cls, value):
        return _canonical(Fraction(value), {}, {})

    @classmethod
    def sine(cls, r, exponent=1):
        """sin(πr)^exponent"""
        return _canonical(1, {Fraction(r): exponent}, {})

    @classmethod
    def two_sine(cls, r):
        """2 sin(πr)"""
        return _canonical(2, {Fraction(r): 1}, {})

    @classmethod
    def sqrt(cls, value):
        """非负有理数的平方根"""
        value = Fraction(value)
        if value < 0:
            raise ValueError(f"负数不能开平方: {value}")
        if value == 0:
            return cls()
        return _canonical(1, {}, _prime_powers(value, HALF))

    # ---------- 性质 ----------

    @property
    def is_zero(self):
        return self.coeff == 0

    @property
    def is_rational(self):
        return not self.sine_factors and not self.surd_factors

    def sign(self):
        """符号：正弦因子均取 (0,1/2]，故只由系数决定"""
        if self.coeff > 0:
            return 1
        return -1 if self.coeff < 0 else 0

    # ---------- 算术 ----------

    def _as_maps(self):
        return dict(self.sine_factors), dict(self.surd_factors)

    def __mul__(self, other):
        if not isinstance(other, SineProductScalar):
            other = SineProductScalar.rational(other)
        if self.is_zero or other.is_zero:
            return SineProductScalar()
        sines, powers = self._as_maps()
        for r, e in other.sine_factors:
            sines[r] = sines.get(r, 0) + e
        for p, s in other.surd_factors:
            powers[p] = powers.get(p, 0) + s
        return _canonical(self.coeff * other.coeff, sines, powers)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("零标量不可逆")
        return _canonical(
            1 / self.coeff,
            {r: -e for r, e in self.sine_factors},
            {p: -s for p, s in self.surd_factors},
        )

    def __truediv__(self, other):
        if not isinstance(other, SineProductScalar):
            other = SineProductScalar.rational(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return SineProductScalar.rational(other) * self.inverse()

    def __neg__(self):
        return SineProductScalar(-self.coeff, self.sine_factors, self.surd_factors)

    def __pow__(self, exponent):
        """
        有理指数幂；非整数指数时要求结果仍可精确表示

        Args:
            exponent: int 或 Fraction

        Returns:
            SineProductScalar
        """
        exponent = Fraction(exponent)
        if self.is_zero:
            if exponent <= 0:
                raise ZeroDivisionError("零标量的非正次幂")
            return self
        if exponent.denominator == 1:
            n = int(exponent)
            return _canonical(
                self.coeff ** n,
                {r: e * n for r, e in self.sine_factors},
                {p: s * n for p, s in self.surd_factors},
            )
        if self.coeff < 0:
            raise ValueError("负数的分数次幂")
        sines = {}
        for r, e in self.sine_factors:
            x = e * exponent
            if x.denominator != 1:
                raise ValueError(f"sin 因子指数 {x} 不是整数")
            sines[r] = int(x)
        totals = _prime_powers(self.coeff)
        for p, s in self.surd_factors:
            totals[p] = totals.get(p, 0) + s
        powers = {}
        for p, t in totals.items():
            x = t * exponent
            if x.denominator > 2:
                raise ValueError(f"根式指数 {x} 不是半整数")
            powers[p] = x
        return _canonical(1, sines, powers)

    def __str__(self):
        return scalar_format(self)

    def __float__(self):
        return float(scalar_to_mpf(self))


# ---------- 文本形式 ----------

def scalar_format(s):
    """
    规范文本形式，例如 "1/3 * S(1/5)^1 * R(3)^-1/2"
    S(r)^e = sin(πr)^e，R(n)^s = n^s（s 为半整数）
    """
    if s.is_zero:
        return "0"
    parts = [str(s.coeff)]
    parts.extend(f"S({r})^{e}" for r, e in s.sine_factors)
    parts.extend(f"R({p})^{half}" for p, half in s.surd_factors)
    return " * ".join(parts)


def scalar_parse(text):
    """
    解析 scalar_format 的输出（也接受未规范化的同类表达式）

    Raises:
        ParseError: 文本不合法
    """
    tokens = [token.strip() for token in str(text).split("*")]
    if not tokens or not tokens[0]:
        raise ParseError(f"空的标量文本: {text!r}")
    try:
        coeff = Fraction(tokens[0])
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"无法解析系数 {tokens[0]!r}: {e}") from e

    sines, powers = {}, {}
    for token in tokens[1:]:
        match = _FACTOR_PATTERN.match(token)
        if match is None:
            raise ParseError(f"无法解析因子 {token!r}")
        kind, base, exp = match.groups()
        exp = Fraction(exp)
        if kind == "S":
            if exp.denominator != 1:
                raise ParseError(f"sin 因子指数必须为整数: {token!r}")
            r = Fraction(base)
            sines[r] = sines.get(r, 0) + int(exp)
        else:
            base = Fraction(base)
            if base.denominator != 1 or base <= 0:
                raise ParseError(f"根式底数必须为正整数: {token!r}")
            n = int(base)
            powers[n] = powers.get(n, 0) + exp
    try:
        return _canonical(coeff, sines, powers)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"无法规范化 {text!r}: {e}") from e


# ---------- 数值 ----------

def _bits(precision_bits):
    return precision_bits or ENGINE_CONFIG["precision_bits"]


def scalar_eval(s, precision_bits=None):
    """
    区间求值

    Args:
        s: SineProductScalar
        precision_bits: 二进制精度，默认取配置

    Returns:
        mpmath.iv.mpf: 包含真值的区间
    """
    iv = mpmath.iv
    saved = iv.prec
    iv.prec = _bits(precision_bits)
    try:
        if s.is_zero:
            return iv.mpf(0)
        value = iv.mpf(s.coeff.numerator) / iv.mpf(s.coeff.denominator)
        for r, e in s.sine_factors:
            factor = iv.sin(iv.pi * iv.mpf(r.numerator) / iv.mpf(r.denominator))
            value = value * factor ** e if e > 0 else value / factor ** (-e)
        for p, half in s.surd_factors:
            root = iv.sqrt(iv.mpf(p))
            value = value * root if half > 0 else value / root
        return value
    finally:
        iv.prec = saved


def scalar_to_mpf(s, precision_bits=None):
    """按指定精度求浮点值（mpmath.mpf）"""
    with mpmath.workprec(_bits(precision_bits)):
        if s.is_zero:
            return mpmath.mpf(0)
        value = mpmath.mpf(s.coeff.numerator) / s.coeff.denominator
        for r, e in s.sine_factors:
            value *= mpmath.sin(mpmath.pi * r.numerator / mpmath.mpf(r.denominator)) ** e
        for p, half in s.surd_factors:
            value = value * mpmath.sqrt(p) if half > 0 else value / mpmath.sqrt(p)
        return value


def numerically_equal(a, b, rel_tol=None, precision_bits=None):
    """相对容差下的数值相等"""
    if a == b:
        return True
    if a.is_zero or b.is_zero:
        return False
    rel_tol = ENGINE_CONFIG["rel_tol"] if rel_tol is None else rel_tol
    with mpmath.workprec(_bits(precision_bits)):
        x = scalar_to_mpf(a, precision_bits)
        y = scalar_to_mpf(b, precision_bits)
        return abs(x - y) <= rel_tol * max(abs(x), abs(y))


def scalar_ratio_as_integer(a, b, max_multiplicity=None, rel_tol=None, precision_bits=None):
    """
    判断 a = m·b 是否对某个整数 1 ≤ m ≤ max_multiplicity 成立

    Returns:
        int 或 None
    """
    if b.is_zero:
        raise ZeroDivisionError("比较基准为零")
    max_multiplicity = max_multiplicity or ENGINE_CONFIG["max_multiplicity"]
    rel_tol = ENGINE_CONFIG["rel_tol"] if rel_tol is None else rel_tol

    exact = a / b
    if exact.is_rational:
        if exact.coeff.denominator == 1 and 1 <= exact.coeff <= max_multiplicity:
            return int(exact.coeff)
        return None

    with mpmath.workprec(_bits(precision_bits)):
        ratio = scalar_to_mpf(a, precision_bits) / scalar_to_mpf(b, precision_bits)
        m = int(mpmath.nint(ratio))
        if 1 <= m <= max_multiplicity and abs(ratio - m) <= rel_tol * m:
            return m
    return None


def two_sine_product(angles):
    """∏ 2 sin(π r)，angles 为 {r: 指数} 或 r 的可迭代对象"""
    if isinstance(angles, dict):
        items = angles.items()
    else:
        counts = {}
        for r in angles:
            r = Fraction(r)
            counts[r] = counts.get(r, 0) + 1
        items = counts.items()
    sines = {}
    twos = 0
    for r, e in items:
        sines[Fraction(r)] = sines.get(Fraction(r), 0) + e
        twos += e
    return _canonical(Fraction(2) ** twos, sines, {})


def sin_formula(n):
    """∏_{j=1}^{n-1} 2 sin(jπ/n)，恒等于 n"""
    return two_sine_product(Fraction(j, n) for j in range(1, n))


def sin_formula2(n):
    """∏_{j=1}^{n-1} (2 sin(jπ/n))^{n-j}，恒等于 n^{n/2}"""
    return two_sine_product({Fraction(j, n): n - j for j in range(1, n)})
