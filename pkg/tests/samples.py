"""测试用的固定单词"""

from wicks_forms.words import parse_word

# 亏格 2 的极大 Wicks 形式
W2 = parse_word("1 2 3 4 5 -1 6 -2 -5 7 8 -3 -6 9 -7 -4 -8 -9")
# 手工着色构造出的亏格 2 单词（36 个字母）
HAND_V = parse_word(
    "1 -7 8 -3 1 -7 8 -4 5 -2 3 -8 9 -4 5 -2 3 -6 4 -8 9 -6 4 -9 "
    "7 -1 2 -5 6 -9 7 -1 2 -5 6 -3"
)
# build_v(W2) 的确定性输出
W2_V = parse_word(
    "1 -6 4 -9 7 -3 1 -9 7 -5 6 -1 2 -8 9 -4 5 -7 8 -6 4 -2 3 -7 "
    "8 -2 3 -5 6 -8 9 -1 2 -4 5 -3"
)
COMMUTATOR = (1, 2, -1, -2)
THETA = (1, 2, 3, -1, -2, -3)
THETA_V = parse_word("1 -6 4 -2 3 -5 6 -1 2 -4 5 -3")
THETA_Z = parse_word("1 -21 13 -5 9 -17 21 -1 5 -13 17 -9")
