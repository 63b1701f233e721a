from nashdpy.game._config import (
    ALGORITHMS,
    GAME_CLASSES
)


class Report(object):
    def __init__(self, bench):
        self._bench = bench
        self._sum = self._bench.summary_df
        self._sum_bkt = ['BENCHMARK SUMMARY', 'Not enough data']
        self._spc = 15
        self._get_buckets()

    def console_report(self):
        print(self.report_text())
        print('\n\n')

    def report_text(self):
        """Returns the console-formatted summary as one string"""
        lines = []
        for line in self._sum_bkt:
            lines.append(''.join([self._f_data(i) for i in line]) if isinstance(line, list) else line)
        return '\n'.join(lines)

    def _get_buckets(self):
        if self._sum is not None and len(self._sum) > 0:
            self._sum_bkt.pop(1)
            self._add_summary_to_bucket()

    def _add_summary_to_bucket(self):
        heads = ['game size', 'algorithm', 'mean eps', '+/- ci95', 'count']
        cls = None
        for i in self._sum.index:
            row = self._sum.loc[i]
            if row['game_class'] != cls:
                cls = row['game_class']
                self._sum_bkt.append(self._f_cls_ctr(cls, len(heads)))
                self._sum_bkt.append(heads)
                self._sum_bkt.append('-' * len(heads) * self._spc)
            self._sum_bkt.append([str(row['game_size']), row['algorithm'], float(row['mean_epsilon']),
                                  float(row['ci95_halfwidth']), str(row['count'])])

    def _f_cls_ctr(self, value, heads_len):
        use_val = f' {GAME_CLASSES.get(value, value)} '
        width = heads_len * self._spc
        left = (width - len(use_val)) // 2
        return ('-' * left) + use_val + ('-' * max(width - left - len(use_val), 0))

    def _f_data(self, value):
        if isinstance(value, float):
            val = f'{value:.4f}'
        elif value in ALGORITHMS:
            val = value.upper()
        else:
            val = str(value)
        return val + (' ' * max(self._spc - len(val), 1))
