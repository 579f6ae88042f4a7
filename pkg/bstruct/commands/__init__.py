"""命令分组（每个名词一个路由）"""
